//! Recognizing fibrations of Eilenberg-Moore algebras: pruned-fibration
//! analysis, the induced parametrized monad, the comparison unit and the
//! dual pipeline for opfibrations.

mod pipeline;
mod side;

pub use pipeline::{
    check_pruned, comparison_unit, copair_left_adjoint, dualize, induced_param_monad, initial_fibre, AsFibration,
    CopairAdjoint, InitialFibre, Pipeline, PrunedReport, PrunedSummary, RecognitionResult, RecognitionSummary,
    RequiredCoproduct,
};
