"""Core numerics: special values, q-series, Eisenstein catalog, L-functions and the regulator."""
