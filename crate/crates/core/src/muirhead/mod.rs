//! The Muirhead system for `1F1` of a diagonal matrix argument, with
//! division and completion in the rational Weyl algebra.

mod groebner;
mod system;

pub use groebner::{
    buchberger_r, holonomic_rank, muirhead_groebner, rweyl_reduce, s_pair_reductions, s_poly,
    standard_monomials, weyl_closure_witness, weyl_closure_witness_m2, DOrder, Division,
    GroebnerBasisR, PairRecord, Rank, WeylClosureWitness,
};
pub use system::{
    default_spec, muirhead_g, muirhead_p, s_pair_op, vandermonde_factor, verify_annihilation,
    AnnihilationItem, AnnihilationReport, MuirheadSystem,
};
