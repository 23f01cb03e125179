//! Presentations of `G_L^M(S)`, homomorphisms to finite groups with
//! verification certificates, stabilizer images and the quotient recipes.

mod conditions;
mod presentation;
mod quotient;
mod recipes;

pub use conditions::{is_torsion_free, necessary_conditions_report, Condition, ConditionsReport, DeckProperties};
pub use presentation::{cyclic_loops, GbbPresentation, Relator};
pub use quotient::{
    FiniteQuotient, KernelReport, QuotientFile, QuotientMode, StabilizerImage, StarAbelian, VerificationCertificate,
    DEFAULT_LOOP_BOUND, MAX_STATES,
};
pub use recipes::{
    cocycle_recipe, hw_product_quotient, pullback_quotient, wreath_recipe, WreathInput, WreathRecipe, WreathSummary,
};
