//! Homogeneous ideals in `C[z_0, ..., z_N]`, their graded pieces, and
//! Hilbert functions.
//!
//! Monomials of a fixed degree are ordered graded-lexicographically:
//! decreasing lexicographic order on exponent tuples, so `z0^m` comes first.

pub mod hilbert;
pub mod ideal;
pub mod monomial;
pub mod piece;

pub use hilbert::{
    ambient_dim_at, fit_hilbert_polynomial, gotzmann_number, hilbert_function, hilbert_window, HilbertData,
    MuConvention, Window,
};
pub use ideal::{HomogPoly, HomogeneousIdeal, TermJson};
pub use monomial::{enumerate_monomials, MultiIndex};
pub use piece::{ideal_degree_piece, mult_map, GradedPiece, IdealPieces, PieceRecord, PieceStore};
