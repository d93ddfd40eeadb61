//! Machine-checkable verdicts.
//!
//! Every decision procedure in the crate reports through a [`Certificate`]:
//! the verdict, a stable tag naming the criterion that produced it, the
//! numbers it compared, and any hypotheses taken on trust (class numbers
//! supplied from outside, splitting assumptions and so on).

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Abelian,
    NonAbelian,
    BoundHolds,
    BoundFails,
    Excluded,
    Inconclusive,
    TorsionTrivial,
    TorsionBounded,
    S3,
    NotS3,
    Applies,
    DoesNotApply,
    HypothesesNotMet,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Abelian => "abelian",
            Verdict::NonAbelian => "non_abelian",
            Verdict::BoundHolds => "bound_holds",
            Verdict::BoundFails => "bound_fails",
            Verdict::Excluded => "excluded",
            Verdict::Inconclusive => "inconclusive",
            Verdict::TorsionTrivial => "torsion_trivial",
            Verdict::TorsionBounded => "torsion_bounded",
            Verdict::S3 => "s3",
            Verdict::NotS3 => "not_s3",
            Verdict::Applies => "applies",
            Verdict::DoesNotApply => "does_not_apply",
            Verdict::HypothesesNotMet => "hypotheses_not_met",
        }
    }
}

/// Stable identifiers for the criteria behind a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    /// `h | t` and every prime factor of `h` divides `t`.
    TBound,
    /// ℓ-part of the class group bounded by `t`.
    TBoundEll,
    /// `h^n < D`.
    MainBound,
    /// An element order of the class group does not divide `[K:F]·h_F`.
    OrderNotDividing,
    /// A prime divides `h` but not the degree.
    PrimeNotDividingDegree,
    /// Cyclotomic field: abelian iff `h = 1`.
    CyclotomicShape,
    /// Maximal real subfield of a cyclotomic field: abelian iff `h = 1`.
    RealCyclotomicShape,
    /// Subfield of a prime-power cyclotomic field: abelian iff `h = 1`.
    PrimePowerConductor,
    /// Odd degree, conductor primes pairwise sharing only powers of 2.
    OddDegreeTwoPowerOverlap,
    /// `φ(m) = n·d` with `gcd(d, n) = 1`.
    CoprimeCofactor,
    /// `n` coprime to every `|Aut(G)|` with `|G| = m` rules out `h = m`.
    AutCoprimeExclusion,
    /// Abelian quadratic: `h = 2^s` with `s <= ν₂(φ(m)) - 1`.
    TwoPowerClassNumber,
    /// Cyclic, odd degree or imaginary: abelian iff `|Po(K)| = h`.
    PolyaEqualsClassGroup,
    /// Real quadratic, no prime ≡ 3 (mod 4) divides `d`.
    #[serde(rename = "real-quadratic-no-3-mod-4")]
    RealQuadraticNo3Mod4,
    /// Real quadratic, some prime ≡ 3 (mod 4) divides `d`.
    #[serde(rename = "real-quadratic-3-mod-4")]
    RealQuadratic3Mod4,
    /// Prime degree `q`: `Cl(K) ≅ (Z/q)^(s-1)`.
    PrimeDegreeClassGroup,
    /// Upper bound for the class number of the Hilbert class field.
    HilbertClassFieldBound,
    /// `x³ + cx + c` has Galois group S₃.
    S3Family,
    /// Residue degree `f` generators from a split semidirect product.
    SplitResidueDegree,
    /// Cyclic class group of squarefree order with primes ≡ 2 (mod 3).
    #[serde(rename = "cyclic-class-group-2-mod-3")]
    CyclicClassGroup2Mod3,
    /// `p = b² + c²` with `h(Q(√p)) > 1`.
    TwoSquaresFamily,
}

impl Criterion {
    pub fn tag(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub name: String,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub subject: Option<String>,
    pub verdict: Verdict,
    pub theorem: Criterion,
    pub witnesses: Vec<Witness>,
    pub assumptions: Vec<String>,
}

impl Certificate {
    pub fn new(verdict: Verdict, theorem: Criterion) -> Self {
        Certificate {
            subject: None,
            verdict,
            theorem,
            witnesses: Vec::new(),
            assumptions: Vec::new(),
        }
    }

    pub fn subject(mut self, subject: impl Into<String>) -> Self {
        self.subject = Some(subject.into());
        self
    }

    pub fn witness(mut self, name: &str, value: impl Into<Value>) -> Self {
        self.witnesses.push(Witness {
            name: name.to_owned(),
            value: value.into(),
        });
        self
    }

    pub fn assume(mut self, assumption: impl Into<String>) -> Self {
        self.assumptions.push(assumption.into());
        self
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.witnesses
            .iter()
            .find(|w| w.name == name)
            .map(|w| &w.value)
    }

    pub fn get_u64(&self, name: &str) -> Option<u64> {
        self.get(name).and_then(Value::as_u64)
    }

    /// Decisive verdicts must carry at least one witness.
    pub fn is_well_formed(&self) -> bool {
        self.verdict == Verdict::Inconclusive || !self.witnesses.is_empty()
    }
}
