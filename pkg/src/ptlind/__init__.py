"""PT-symmetric open quantum systems at desk scale.

Builds two-site Lindblad models whose Liouvillian is invariant under the
anti-unitary parity/loss-gain exchange map, verifies that symmetry, and
computes steady states, order parameters, spectra and time evolution,
including the large-spin analytic limit and a random-jump-operator ensemble.
"""

__version__ = "0.1.0"
