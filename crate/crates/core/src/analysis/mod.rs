//! Subalgebra machinery: closures, transporters, series, Fitting subalgebra,
//! socle, maximal subalgebras, Frattini subalgebras and splittings.

mod closure;
mod frattini;
mod structure;

pub use closure::{
    bracket_spaces, center, centralizer, centralizer_of, closure, ideal_closure, is_abelian,
    is_ideal, is_nilpotent, is_p_ideal, is_p_stable, is_p_subalgebra, is_soluble, is_subalgebra,
    nilpotency_class, normalizer, p_closure, p_closure_of, series, subalgebra_closure,
    transporter, ClosureMode, SeriesKind, SeriesResult, TransporterMode,
};
pub use frattini::{
    frattini, frattini_pair, maximal_proper, maximal_subalgebras, split_over, subalgebras,
    FrattiniMode, FrattiniPair, Splitting, SPLIT_SAMPLES,
};
pub use structure::{fitting, minimal_ideals, principal_ideals, socle, Socle};
