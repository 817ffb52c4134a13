//! Hom and Ext¹ of finitely generated abelian groups.
//!
//! `Ext¹(A, B)` is computed against the free resolution
//! `0 → ℤᵏ --diag(aᵢ)--> ℤᵏ ⊕ ℤʳ → A → 0` of the canonical form of `A`, which
//! identifies it with `⊕ᵢ B/aᵢB`. In these coordinates the Baer sum is
//! vector addition and both actions are explicit integer matrices.

mod delta;
mod ext;
mod hom;
mod ses;

pub use delta::{
    check_pullbacks, connecting_hom, connecting_hom_dual, connecting_hom_dual_of_class,
    connecting_hom_of_class, ext_map_contravariant, ext_map_contravariant_matrix,
    ext_map_covariant, ext_map_covariant_matrix, les_exact_at_hom, ConnectingHom,
};
pub use ext::{baer_sum, ext_group, negate, pullback_action, pushout_action, ExtClass, ExtGroup};
pub use hom::{hom_group, HomGroup, HomPiece};
pub use ses::{
    baer_sum_geometric, classify, direct_sum_seq, equivalence, pullback_seq, pushout_seq, realize,
    ShortExactSeq,
};
