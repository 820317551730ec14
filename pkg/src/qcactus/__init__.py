"""qcactus: exact checks for quantum Weyl group actions, crystals, cactus groups,
Kazhdan-Lusztig cells and zigzag Rickard complexes."""

__version__ = "0.1.0"
