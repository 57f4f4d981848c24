//! Reports for the stages and the full certification, as JSON or text.
//!
//! Every field except `timing_ms` is a function of the spec and the flags.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CountRow {
    pub d: u32,
    pub q: String,
    #[serde(rename = "N")]
    pub n: String,
    pub trace: String,
    pub source: &'static str,
    /// Whether the reconstructed polynomial predicts this count; absent before the zeta step.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeilRow {
    pub monic: bool,
    pub constant_term: bool,
    pub reciprocity: bool,
    pub roots_on_circle: bool,
    /// Advisory only.
    pub numeric_deviation: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaSection {
    pub k: usize,
    pub traces_used: usize,
    pub surviving_signs: Vec<i8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
    /// `P(t)`, highest degree first.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<Vec<String>>,
    /// `R(t) = P(t) / (t - q)^k`, highest degree first.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weil: Option<WeilRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_bound: Option<usize>,
    /// `[n, multiplicity]` for each cyclotomic factor of `P(q t)`.
    pub cyclotomic_factors: Vec<[u64; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContactRow {
    pub point: String,
    pub field_degree: u32,
    /// Intersection multiplicity of the line and the branch curve at the point.
    pub contact_order: u32,
    pub conjugates: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct LineRow {
    pub line: String,
    pub field_degree: u32,
    pub split_field_degree: u32,
    pub contacts: Vec<ContactRow>,
    /// `[f3, f5]` mod p with `f6 = f3^2 + l f5`, for rational splits.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<[String; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionRow {
    pub line: String,
    /// Integer lifts used for `G`.
    pub f3: String,
    pub f5: String,
    #[serde(rename = "G")]
    pub g: String,
    /// Reductions on the line, in `(y, z)` after moving the line to `x = 0`.
    pub g_bar: String,
    pub f3_bar: String,
    pub f5_bar: String,
    pub matrix: Vec<Vec<u64>>,
    pub rhs: Vec<u64>,
    pub verdict: &'static str,
    /// `[b3, c1]` with `G = f3 b3 + f5 c1` on the line.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[String; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionFailure {
    pub line: String,
    pub error: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeSection {
    /// Exact check of `f6 = c q3^2 + q2 q4` for each conic certificate.
    pub conics_verified: Vec<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gram: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gram_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discriminant: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    Proved { rank: usize },
    Bounded { lower: usize, upper: usize },
    EvidenceOnly { lower: usize },
}

impl Verdict {
    pub fn text(&self) -> String {
        match self {
            Verdict::Proved { rank } => format!("rank = {rank} proved"),
            Verdict::Bounded { lower, upper } => format!("{lower} <= rank <= {upper}"),
            Verdict::EvidenceOnly { lower } => format!("rank >= {lower}; no upper bound certified"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub surface: String,
    pub prime: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub smoothness: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub counts: Vec<CountRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<ZetaSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tritangents: Option<Vec<LineRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstructions: Option<Vec<ObstructionRow>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub obstruction_failures: Vec<ObstructionFailure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict_text: Option<String>,
    /// The exact checks the verdict rests on, in order.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<String>,
    /// Supporting observations that are not part of any proof.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub evidence: Vec<String>,
    /// Wall-clock time per computed count; the only nondeterministic field.
    pub timing_ms: BTreeMap<String, u128>,
}

impl Report {
    pub fn new(surface: &str, prime: u64) -> Self {
        Report {
            surface: surface.into(),
            prime,
            smoothness: None,
            counts: Vec::new(),
            zeta: None,
            tritangents: None,
            obstructions: None,
            obstruction_failures: Vec::new(),
            lattice: None,
            verdict: None,
            verdict_text: None,
            steps: Vec::new(),
            evidence: Vec::new(),
            timing_ms: BTreeMap::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Human-readable rendering; timings are left out so the text is reproducible.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(w, "surface: {} (p = {})", self.surface, self.prime);
        if let Some(s) = &self.smoothness {
            let _ = writeln!(w, "reduction: {s}");
        }
        if !self.counts.is_empty() {
            let _ = writeln!(w, "counts:");
            let _ = writeln!(w, "  {:>3}  {:>14}  {:>16}  {:>14}  {:<9} predicted", "d", "q", "N", "trace", "source");
            for c in &self.counts {
                let pred = match c.predicted {
                    Some(true) => "yes",
                    Some(false) => "NO",
                    None => "-",
                };
                let _ = writeln!(w, "  {:>3}  {:>14}  {:>16}  {:>14}  {:<9} {pred}", c.d, c.q, c.n, c.trace, c.source);
            }
        }
        if let Some(z) = &self.zeta {
            let _ = writeln!(w, "zeta:");
            let signs: Vec<String> = z.surviving_signs.iter().map(|s| format!("{s:+}")).collect();
            let _ = writeln!(
                w,
                "  k = {}, traces used = {}, signs passing the Weil checks: {{{}}}",
                z.k,
                z.traces_used,
                signs.join(", ")
            );
            if let Some(f) = &z.factor {
                let _ = writeln!(w, "  P(t) = (t - {})^{} R(t)", self.prime, z.k);
                let _ = writeln!(w, "  R coefficients, highest first: {}", f.join(", "));
            }
            if let Some(wr) = &z.weil {
                let dev = wr.numeric_deviation.map_or("n/a".to_string(), |d| format!("{d:.1e}"));
                let _ = writeln!(
                    w,
                    "  exact checks: monic {}, constant term {}, reciprocity {}, all roots of modulus q {} (numeric deviation {dev}, advisory)",
                    yes(wr.monic),
                    yes(wr.constant_term),
                    yes(wr.reciprocity),
                    yes(wr.roots_on_circle)
                );
            }
            if let Some(b) = z.rank_bound {
                let factors: Vec<String> = z.cyclotomic_factors.iter().map(|[n, m]| format!("Phi_{n}^{m}")).collect();
                let _ = writeln!(
                    w,
                    "  rank bound: {b} ({})",
                    if factors.is_empty() { "none".into() } else { factors.join(" ") }
                );
            }
        }
        if let Some(lines) = &self.tritangents {
            let _ = writeln!(w, "tritangents: {}", lines.len());
            for l in lines {
                let _ = writeln!(
                    w,
                    "  {} = 0 over F_{}^{}, pull-back splits over F_{}^{}",
                    l.line,
                    self.prime,
                    l.field_degree,
                    self.prime,
                    l.field_degree * l.split_field_degree
                );
                for c in &l.contacts {
                    let _ = writeln!(
                        w,
                        "    contact {} (F_{}^{}, order {}, {} conjugate{})",
                        c.point,
                        self.prime,
                        c.field_degree,
                        c.contact_order,
                        c.conjugates,
                        if c.conjugates == 1 { "" } else { "s" }
                    );
                }
                if let Some([f3, f5]) = &l.decomposition {
                    let _ = writeln!(w, "    f3 = {f3}");
                    let _ = writeln!(w, "    f5 = {f5}");
                }
            }
        }
        if let Some(obs) = &self.obstructions {
            let _ = writeln!(w, "obstructions:");
            for o in obs {
                let _ = writeln!(w, "  {} = 0: {}", o.line, o.verdict);
                let _ = writeln!(w, "    G = {}", o.g);
                let _ = writeln!(w, "    on the line: G = {}, f3 = {}, f5 = {}", o.g_bar, o.f3_bar, o.f5_bar);
                let rows: Vec<String> = o.matrix.iter().map(|r| format!("{r:?}")).collect();
                let _ = writeln!(w, "    system {} x 6: [{}] rhs {:?}", o.matrix.len(), rows.join(", "), o.rhs);
                if let Some([b3, c1]) = &o.witness {
                    let _ = writeln!(w, "    witness b3 = {b3}, c1 = {c1}");
                }
            }
        }
        for f in &self.obstruction_failures {
            let _ = writeln!(w, "  {} = 0: not decided ({})", f.line, f.error);
        }
        if let Some(l) = &self.lattice {
            let _ = writeln!(w, "lattice:");
            if l.conics_verified.is_empty() {
                let _ = writeln!(w, "  no conic certificates given");
            } else {
                let v: Vec<&str> = l.conics_verified.iter().map(|&b| yes(b)).collect();
                let _ = writeln!(w, "  conic identities verified: [{}]", v.join(", "));
            }
            if let Some(g) = &l.gram {
                let _ = writeln!(w, "  intersection matrix {g}");
            }
            if let Some(r) = l.gram_rank {
                let _ =
                    writeln!(w, "  rank {r}, discriminant {}", l.discriminant.as_deref().unwrap_or("n/a (degenerate)"));
            }
        }
        if let Some(v) = &self.verdict_text {
            let _ = writeln!(w, "verdict: {v}");
        }
        if !self.steps.is_empty() {
            let _ = writeln!(w, "steps:");
            for (i, s) in self.steps.iter().enumerate() {
                let _ = writeln!(w, "  {}. {s}", i + 1);
            }
        }
        if !self.evidence.is_empty() {
            let _ = writeln!(w, "evidence (not proof):");
            for e in &self.evidence {
                let _ = writeln!(w, "  - {e}");
            }
        }
        out
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "NO"
    }
}
