//! Typed JSON payloads, one per subcommand, plus the report envelope.

use fibalg_core::{Verdict, Witness};
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

/// Schema version of every document under `schemas/`.
pub const SCHEMA_VERSION: &str = "v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct DiagnosticOut {
    /// `lexical`, `syntax`, `reference`, `validation`, `usage` or `construction`.
    pub severity: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct WitnessOut {
    pub kind: String,
    pub detail: String,
    /// `[source, target]` for count mismatches.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<[usize; 2]>,
}

impl From<&Witness> for WitnessOut {
    fn from(w: &Witness) -> Self {
        let kind = serde_json::to_value(w.kind)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default();
        Self {
            kind,
            detail: w.detail.clone(),
            counts: w.counts.map(|(s, t)| [s, t]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct VerdictOut {
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessOut>,
}

impl From<&Verdict> for VerdictOut {
    fn from(v: &Verdict) -> Self {
        Self {
            holds: v.holds(),
            witness: v.witness().map(WitnessOut::from),
        }
    }
}

/// The envelope printed by `--json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub args: Vec<String>,
    pub status: Status,
    pub exit_code: i32,
    /// Command-specific object; `null` when the command did not run.
    pub payload: serde_json::Value,
    pub diagnostics: Vec<DiagnosticOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessOut>,
    pub timing_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct EntitySummary {
    pub name: String,
    pub kind: String,
    pub summary: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct CheckPayload {
    pub file: String,
    pub entities: Vec<EntitySummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct FibreCount {
    pub param: String,
    pub objects: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct TotalPayload {
    pub param: String,
    pub flavor: String,
    pub variance: String,
    pub objects: usize,
    pub morphisms: usize,
    pub object_ids: Vec<String>,
    pub fibres: Vec<FibreCount>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct ReindexPayload {
    pub param: String,
    pub along: String,
    pub source: String,
    pub target: String,
    pub target_param: String,
    pub target_carrier: String,
    pub target_structure: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct VerifyFibPayload {
    pub entity: String,
    pub kind: String,
    pub variance: String,
    pub total_objects: usize,
    pub base_objects: usize,
    pub verdict: VerdictOut,
    /// Number of chosen lifts in the cleavage.
    pub lifts: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct HomCount {
    pub source: String,
    pub target: String,
    pub total: usize,
    pub em: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct CompareHatPayload {
    pub param: String,
    pub total_objects: usize,
    pub em_objects: usize,
    pub equivalence: VerdictOut,
    pub hom_pairs_checked: usize,
    /// Object pairs whose hom-set cardinalities differ across the comparison.
    pub hom_mismatches: Vec<HomCount>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct Leg {
    pub node: String,
    pub morphism: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct ConeOut {
    pub apex: String,
    pub legs: Vec<Leg>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct LimitsPayload {
    pub total: String,
    pub diagram: String,
    pub nodes: usize,
    /// Limit created from the base and fibre limits.
    pub created: Option<ConeOut>,
    /// Limit found by searching all cones in the total category.
    pub brute_force: Option<ConeOut>,
    /// Both absent, or both present and isomorphic as cones.
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct CoproductPayload {
    pub total: String,
    pub left: String,
    pub right: String,
    /// Coproduct from the reflexive coequalizer of free algebras.
    pub linton: Option<ConeOut>,
    /// Coproduct found by searching all cocones in the total category.
    pub brute_force: Option<ConeOut>,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct SwindleStepOut {
    pub object: String,
    pub link: String,
    pub leg: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct SwindlePayload {
    pub alpha: String,
    pub algebra: String,
    pub cap: usize,
    pub steps: Vec<SwindleStepOut>,
    pub stabilized_at: Option<usize>,
    pub carrier: Option<String>,
    pub structure: Option<String>,
    pub unit: Option<String>,
    /// Hom-set bijection against every target algebra.
    pub adjunction: VerdictOut,
    pub lines: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct NamedVerdict {
    pub name: String,
    pub verdict: VerdictOut,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct RequiredCoproductOut {
    pub param: String,
    pub initial_fibre_object: String,
    pub apex: Option<String>,
    pub base_iso: Option<String>,
    pub verdict: VerdictOut,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct PrunedOut {
    pub has_initial_base: VerdictOut,
    pub fibrewise_initials: Vec<NamedVerdict>,
    pub p_left_adjoint: VerdictOut,
    pub required_coproducts: Vec<RequiredCoproductOut>,
    pub p_preserves_them: VerdictOut,
    pub fibrewise_terminals_preserved: VerdictOut,
    pub pruned: VerdictOut,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct RecognizePayload {
    pub fibration: String,
    /// Run on opposite categories (opfibration input).
    pub dual: bool,
    pub pruned: PrunedOut,
    /// `A: X->T_A X, ...` per parameter of the induced parametrized monad.
    pub t_p: Vec<String>,
    pub trivial_at_initial: Option<VerdictOut>,
    pub triangle: Option<VerdictOut>,
    pub is_em: bool,
    pub witness: Option<WitnessOut>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct SemidirectAdjunctionOut {
    pub target: String,
    pub homs_from_semidirect: usize,
    pub action_morphisms: usize,
    pub verdict: VerdictOut,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct SemidirectPayload {
    pub action: String,
    pub acting: String,
    pub on: String,
    pub order: usize,
    pub is_group: bool,
    pub elements: Vec<String>,
    /// `table[i][j]` is `elements[i] * elements[j]`.
    pub table: Vec<Vec<String>>,
    /// First group or monoid of the file isomorphic to the product.
    pub iso_to: Option<String>,
    pub adjunction: Vec<SemidirectAdjunctionOut>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct ExampleOut {
    pub name: String,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct ExamplesListPayload {
    pub examples: Vec<ExampleOut>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct ExamplesEmitPayload {
    pub name: String,
    pub text: String,
}

/// `(file stem, schema)` for the envelope and every payload.
pub fn schemas() -> Vec<(&'static str, schemars::schema::RootSchema)> {
    use schemars::schema_for;
    vec![
        ("report", schema_for!(Report)),
        ("check", schema_for!(CheckPayload)),
        ("total", schema_for!(TotalPayload)),
        ("reindex", schema_for!(ReindexPayload)),
        ("verify-fib", schema_for!(VerifyFibPayload)),
        ("compare-hat", schema_for!(CompareHatPayload)),
        ("limits", schema_for!(LimitsPayload)),
        ("coproduct", schema_for!(CoproductPayload)),
        ("swindle", schema_for!(SwindlePayload)),
        ("recognize", schema_for!(RecognizePayload)),
        ("semidirect", schema_for!(SemidirectPayload)),
        ("examples-list", schema_for!(ExamplesListPayload)),
        ("examples-emit", schema_for!(ExamplesEmitPayload)),
    ]
}
