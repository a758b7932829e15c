//! Koszul complexes, torsion of based exact complexes, and Chow forms.

pub mod chow;
pub mod complex;

pub use chow::{
    build_koszul, chow_eval, chow_interpolate, scaling_exponent, squarefree_profile, vanishing_order_probe,
    ChowInterpolation, ChowNormalizer, LinearFormSet, MultihomogPoly, MultihomogTerm, VanishingProbe,
};
pub use complex::{BasedComplex, TorsionCertificate};
