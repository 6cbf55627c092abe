"""
Core module.

Contains the proof-structure data model and its structural operations:
- ports: port identifiers, labels and addresses
- net: GroundNet / Net and their measures
- algebra: restriction, substructures, gluing, wiring, renaming
- isomorphism: recursive isomorphism checks
"""

from .net import GroundNet, Net, ProofNetError, UnknownPort
from .ports import Address, Atom, Copy, Label, PortId

__all__ = [
    "Address",
    "Atom",
    "Copy",
    "GroundNet",
    "Label",
    "Net",
    "PortId",
    "ProofNetError",
    "UnknownPort",
]
