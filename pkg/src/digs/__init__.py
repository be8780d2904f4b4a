"""Groebner-Shirshov bases and normal forms for dialgebras and disemigroups."""

from digs.diword import (
    Alphabet,
    DegLexOrder,
    DiPolynomial,
    LeadingData,
    NormalDiword,
    WordOrder,
    compare,
    dw_left,
    dw_right,
    leading_data,
    monic,
    product_left,
    product_right,
    validate_word_order,
)

__version__ = "0.1.0"
