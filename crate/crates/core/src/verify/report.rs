use std::fmt;

use serde::{Deserialize, Serialize};

use crate::hfam::Witness;

/// Inequality or identity checked by a verifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    HadamardClassical,
    SarikayaH,
    FracHadamardConvex,
    Lemma1Identity,
    ThmMain,
    ThmSuperadd,
    ThmTrapezoid,
    /// Cross-check of a special case against its closed form.
    Reduction,
}

impl TheoremId {
    pub const ALL: [TheoremId; 7] = [
        TheoremId::HadamardClassical,
        TheoremId::SarikayaH,
        TheoremId::FracHadamardConvex,
        TheoremId::Lemma1Identity,
        TheoremId::ThmMain,
        TheoremId::ThmSuperadd,
        TheoremId::ThmTrapezoid,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::HadamardClassical => "hadamard_classical",
            TheoremId::SarikayaH => "sarikaya_h",
            TheoremId::FracHadamardConvex => "frac_hadamard_convex",
            TheoremId::Lemma1Identity => "lemma1_identity",
            TheoremId::ThmMain => "thm_main",
            TheoremId::ThmSuperadd => "thm_superadd",
            TheoremId::ThmTrapezoid => "thm_trapezoid",
            TheoremId::Reduction => "reduction",
        }
    }

    /// Parses the snake-case id or one of the short aliases
    /// (`eq10`, `eq11`, `eq16`, `xy`, `mt`, `lemma1`, `classical`).
    pub fn parse(s: &str) -> Option<TheoremId> {
        let id = match s {
            "classical" | "eqa" => TheoremId::HadamardClassical,
            "eq10" => TheoremId::SarikayaH,
            "eq16" => TheoremId::FracHadamardConvex,
            "lemma1" => TheoremId::Lemma1Identity,
            "eq11" => TheoremId::ThmMain,
            "xy" => TheoremId::ThmSuperadd,
            "mt" => TheoremId::ThmTrapezoid,
            other => return Self::ALL.into_iter().find(|t| t.as_str() == other),
        };
        Some(id)
    }

    /// Names of the sides, left to right.
    pub fn side_names(self) -> &'static [&'static str] {
        match self {
            TheoremId::HadamardClassical | TheoremId::FracHadamardConvex => &["midpoint", "mean", "trapezoid"],
            TheoremId::SarikayaH => &["midpoint_over_2h_half", "mean", "trapezoid_h_integral"],
            TheoremId::Lemma1Identity => &["lhs", "rhs"],
            TheoremId::ThmMain => &["fractional_pair", "moment_bound", "holder_bound"],
            TheoremId::ThmSuperadd => &["fractional_pair", "superadditive_bound"],
            TheoremId::ThmTrapezoid => &["abs_trapezoid_defect", "holder_bound"],
            TheoremId::Reduction => &["general", "closed_form"],
        }
    }

    /// Names of the slacks. Slacks are `next - prev`, except for the two
    /// identity checks, whose single slack is `lhs - rhs`.
    pub fn slack_names(self) -> Vec<String> {
        if self.is_identity() {
            let s = self.side_names();
            return vec![format!("{}-{}", s[0], s[1])];
        }
        self.side_names().windows(2).map(|w| format!("{}-{}", w[1], w[0])).collect()
    }

    /// Identities are judged two-sided: `|slack| <= tolerance`.
    pub fn is_identity(self) -> bool {
        matches!(self, TheoremId::Lemma1Identity | TheoremId::Reduction)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Violated,
    Inapplicable,
}

impl Status {
    /// Process exit code: 0 holds, 2 violated, 3 inapplicable.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Holds => 0,
            Status::Violated => 2,
            Status::Inapplicable => 3,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Violated => "violated",
            Status::Inapplicable => "inapplicable",
        })
    }
}

/// Machine-readable cause of an `inapplicable` status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReasonCode {
    HypothesisFailed,
    DivergentHMoment,
    DivergentIntegral,
    HolderExponent,
    NotSuperadditive,
    MissingDerivative,
}

impl ReasonCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ReasonCode::HypothesisFailed => "hypothesis_failed",
            ReasonCode::DivergentHMoment => "divergent_h_moment",
            ReasonCode::DivergentIntegral => "divergent_integral",
            ReasonCode::HolderExponent => "holder_exponent",
            ReasonCode::NotSuperadditive => "not_superadditive",
            ReasonCode::MissingDerivative => "missing_derivative",
        }
    }
}

impl fmt::Display for ReasonCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Serializable copy of a class-check witness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportWitness {
    Triple {
        #[serde(with = "float")]
        x: f64,
        #[serde(with = "float")]
        y: f64,
        #[serde(with = "float")]
        lambda: f64,
    },
    Negative {
        #[serde(with = "float")]
        x: f64,
    },
    Pair {
        #[serde(with = "float")]
        x: f64,
        #[serde(with = "float")]
        y: f64,
    },
}

impl From<Witness<f64>> for ReportWitness {
    fn from(w: Witness<f64>) -> Self {
        match w {
            Witness::Triple { x, y, lambda } => ReportWitness::Triple { x, y, lambda },
            Witness::Negative { x } => ReportWitness::Negative { x },
            Witness::Pair { x, y } => ReportWitness::Pair { x, y },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reason {
    pub code: ReasonCode,
    pub detail: String,
    pub witness: Option<ReportWitness>,
}

impl Reason {
    pub fn new(code: ReasonCode, detail: impl Into<String>) -> Self {
        Self { code, detail: detail.into(), witness: None }
    }

    pub fn with_witness(mut self, w: Option<Witness<f64>>) -> Self {
        self.witness = w.map(Into::into);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    #[serde(with = "float")]
    pub value: f64,
}

impl NamedValue {
    pub fn new(name: impl Into<String>, value: f64) -> Self {
        Self { name: name.into(), value }
    }
}

/// Parameter echo of a verifier call.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportInputs {
    pub f: String,
    pub h: Option<String>,
    #[serde(with = "float")]
    pub a: f64,
    #[serde(with = "float")]
    pub b: f64,
    #[serde(with = "opt_float")]
    pub alpha: Option<f64>,
    #[serde(with = "opt_float")]
    pub p: Option<f64>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub theorem_id: TheoremId,
    pub inputs: ReportInputs,
    pub sides: Vec<NamedValue>,
    pub slacks: Vec<NamedValue>,
    pub status: Status,
    pub reason: Option<Reason>,
    #[serde(with = "float")]
    pub quad_error: f64,
}

impl InequalityReport {
    /// Smallest slack, or `None` when no sides were computed. For identity
    /// checks this is `-|slack|`, so that larger is always better.
    pub fn min_slack(&self) -> Option<f64> {
        let identity = self.theorem_id.is_identity();
        self.slacks.iter().map(|s| if identity { -s.value.abs() } else { s.value }).reduce(f64::min)
    }

    pub fn side(&self, name: &str) -> Option<f64> {
        self.sides.iter().find(|s| s.name == name).map(|s| s.value)
    }

    pub fn side_values(&self) -> Vec<f64> {
        self.sides.iter().map(|s| s.value).collect()
    }

    pub fn slack_values(&self) -> Vec<f64> {
        self.slacks.iter().map(|s| s.value).collect()
    }

    /// Pretty-printed JSON. Non-finite floats are written as the strings
    /// `"inf"`, `"-inf"` and `"nan"`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Finite floats as JSON numbers (shortest round-trip form), others as
/// strings.
pub mod float {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if v.is_nan() {
            s.serialize_str("nan")
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Text(t) => match t.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(de::Error::custom(format!("not a float: {other:?}"))),
            },
        }
    }
}

pub mod opt_float {
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(transparent)]
    struct Wrapped(#[serde(with = "super::float")] f64);

    pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => super::float::serialize(x, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        Ok(Option::<Wrapped>::deserialize(d)?.map(|w| w.0))
    }
}
