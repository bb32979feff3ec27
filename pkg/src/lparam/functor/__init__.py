"""Dictionary functor to the local model and the verification drivers."""

from .dictionary import FunctorOutput, dictionary, r_functor, recognize, sign_equivalent

__all__ = ["FunctorOutput", "dictionary", "r_functor", "recognize", "sign_equivalent"]
