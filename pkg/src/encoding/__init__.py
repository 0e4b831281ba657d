"""Configuration encoding schemes."""

from .encoder import SCHEME_ALIASES, Encoder, OptionEncoding, Scheme, encode, fit_encoder

__all__ = ["SCHEME_ALIASES", "Encoder", "OptionEncoding", "Scheme", "encode", "fit_encoder"]
