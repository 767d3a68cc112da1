from .psi import BruteForcePsi
from .spectrum import DenseQ2Spectrum, DenseSpectrum, JacobiEigen, SignlessLaplacian
from .coloring import ChromaticNumber, OptimalColoring, VertexBipartiteness
from .gprime import GPrime, BuildGPrime, VerifyGxInequality, HgSweep, HgRows, PlainDifferenceSum

__all__ = [
    "BruteForcePsi", "DenseQ2Spectrum", "DenseSpectrum", "JacobiEigen", "SignlessLaplacian",
    "ChromaticNumber", "OptimalColoring", "VertexBipartiteness",
    "GPrime", "BuildGPrime", "VerifyGxInequality", "HgSweep", "HgRows", "PlainDifferenceSum",
]
