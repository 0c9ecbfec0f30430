use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A denominator in `g` vanishes at the supplied coupling.
    #[error("pole at g = {0}")]
    PoleAtG(String),
    /// The gauge-transformed Hamiltonian maps a basis element out of the
    /// quasi-solvable subspace.
    #[error("quasi-solvable subspace not preserved: basis element {index} leaks into {leak}")]
    SubspaceNotPreserved { index: usize, leak: String },
    /// The matrix is nonsingular at the requested energy.
    #[error("no kernel vector at the requested energy")]
    NoKernel,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
