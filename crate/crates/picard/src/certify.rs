//! Stages of the single-prime method and the certification rule.
//!
//! Upper bound: the cyclotomic degree `U` of the Frobenius polynomial bounds
//! the rank over the algebraic closure of `F_p`, which bounds the rank over
//! `Q-bar`. If some tritangent class `O(l)` over `F_p` fails to lift mod `p^2`,
//! rank `U` over `Q-bar` is impossible (the specialization would be onto, its
//! cokernel being torsion-free for odd `p`), so the bound drops to `U - 1`.
//!
//! Lower bound: the polarization gives 1; verified conic certificates with an
//! intersection matrix give its rank.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use picard_core::ffield::{Elem, Field};
use picard_core::forms::{BinaryForm, IntForm, ModForm};
use picard_core::geom::{
    decompose_along_line, find_tritangents, smoothness_check, verify_conic_identity, SingularityReport, TritangentCert,
};
use picard_core::lattice::{gram_rank_disc, GramMatrix};
use picard_core::obstruct::{obstruction_g, obstruction_vanishes, ObstructionReport, Verdict as ObsVerdict};
use picard_core::zeta::{cyclotomic_part, determine_sign, predicted_count, weil_report, FrobeniusPoly, RankBound};

use crate::cache::CacheStore;
use crate::counting::{count_series, CountOptions, CountSeries, Source};
use crate::error::{Error, Result};
use crate::report::{
    ContactRow, CountRow, LatticeSection, LineRow, ObstructionFailure, ObstructionRow, Report, Verdict, WeilRow,
    ZetaSection,
};
use crate::spec::SurfaceSpec;

/// Degree of the Frobenius polynomial on `H^2` of a K3 surface.
pub const H2_DEGREE: usize = 22;

/// A spec bound to a prime.
pub struct Surface {
    pub spec: SurfaceSpec,
    pub p: u64,
    pub f6: IntForm,
    pub base: Arc<Field>,
    /// `f6 mod p`.
    pub g: ModForm,
}

impl Surface {
    pub fn new(spec: SurfaceSpec, p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::Usage("p = 2 is excluded: the method needs an odd prime (p != 2)".into()));
        }
        let base = Arc::new(Field::prime(p)?);
        let f6 = spec.f6();
        let g = f6.reduce_mod(&base);
        if g.is_zero() {
            return Err(Error::Math(format!("f6 vanishes identically mod {p}")));
        }
        Ok(Surface { spec, p, f6, base, g })
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    /// Counts to compute; at least what the zeta step needs when it runs.
    pub dmax: Option<u32>,
    /// Tritangent search over `F_{p^e}`, `e <= line_degree`.
    pub line_degree: u32,
    pub count: CountOptions,
}

impl Default for Options {
    fn default() -> Self {
        Options { dmax: None, line_degree: 2, count: CountOptions::default() }
    }
}

/// Traces that pin down `P = (t - q)^k R`.
pub fn traces_needed(k: usize) -> u32 {
    ((H2_DEGREE - k) / 2) as u32
}

/// The spec's `k`, else 2 when an `F_p` tritangent splits over `F_p` (the
/// polarization and one component), else 0.
pub fn resolve_k(spec: &SurfaceSpec, lines: &[TritangentCert]) -> usize {
    spec.k.unwrap_or(if lines.iter().any(rational_split) { 2 } else { 0 })
}

fn rational_split(c: &TritangentCert) -> bool {
    c.line_field_degree() == 1 && c.split_field_degree == 1
}

pub fn run_counts(s: &Surface, dmax: u32, cache: &mut CacheStore, opts: CountOptions) -> Result<CountSeries> {
    count_series(&s.f6, s.p, dmax, cache, &s.spec.external(s.p), opts)
}

pub struct ZetaOutcome {
    pub k: usize,
    pub traces_used: usize,
    pub candidates: Vec<(i8, FrobeniusPoly)>,
    /// The polynomial, when exactly one sign survives.
    pub chosen: Option<FrobeniusPoly>,
    pub bound: Option<RankBound>,
}

pub fn run_zeta(series: &CountSeries, k: usize) -> Result<ZetaOutcome> {
    let traces = series.traces();
    let needed = traces_needed(k) as usize;
    if traces.len() < needed {
        return Err(Error::Usage(format!("k = {k} needs {needed} counts, only {} available", traces.len())));
    }
    let q = BigInt::from(series.p);
    let candidates = determine_sign(&traces, &q, H2_DEGREE, k);
    if candidates.is_empty() {
        return Err(Error::Math(format!(
            "no sign of the functional equation gives a polynomial with k = {k} passing the Weil checks"
        )));
    }
    let chosen = (candidates.len() == 1).then(|| candidates[0].1.clone());
    let bound = chosen.as_ref().map(cyclotomic_part);
    Ok(ZetaOutcome { k, traces_used: traces.len(), candidates, chosen, bound })
}

pub fn run_tritangents(s: &Surface, line_degree: u32) -> Result<Vec<TritangentCert>> {
    Ok(find_tritangents(&s.g, line_degree.max(1))?)
}

pub struct ObstructionOutcome {
    pub line: ModForm,
    pub result: std::result::Result<(IntForm, IntForm, ObstructionReport), String>,
}

/// The obstruction along every `F_p` tritangent whose pull-back splits over `F_p`.
pub fn run_obstructions(s: &Surface, lines: &[TritangentCert]) -> Vec<ObstructionOutcome> {
    lines
        .iter()
        .filter(|c| rational_split(c))
        .map(|c| {
            let result = (|| {
                let (f3, f5) = decompose_along_line(&s.f6, &c.line)?;
                let g = obstruction_g(&s.f6, &c.line, &f3, &f5)?;
                let report = obstruction_vanishes(&g, &c.line, &f3, &f5)?;
                Ok::<_, picard_core::Error>((f3, f5, report))
            })()
            .map_err(|e| e.to_string());
            ObstructionOutcome { line: c.line.clone(), result }
        })
        .collect()
}

pub struct LatticeOutcome {
    pub conics_verified: Vec<bool>,
    pub gram: Option<GramMatrix>,
    pub rank_disc: Option<(usize, Option<BigInt>)>,
}

pub fn run_lattice(s: &Surface) -> Result<LatticeOutcome> {
    let conics_verified = s.spec.conic_certs()?.iter().map(|c| verify_conic_identity(c, &s.f6)).collect();
    let gram = s.spec.gram_matrix()?;
    let rank_disc = gram.as_ref().map(gram_rank_disc);
    Ok(LatticeOutcome { conics_verified, gram, rank_disc })
}

// ---- rendering ----

fn elem_text(f: &Field, a: Elem) -> String {
    let s = f.format(a);
    if s.contains('t') {
        format!("({s})")
    } else {
        s
    }
}

/// `a x + b y + c z` with unit coefficients omitted.
pub fn line_text(line: &ModForm) -> String {
    let f: &Field = line.field();
    let coeffs = line.linear_coeffs().expect("tritangent lines are linear");
    let parts: Vec<String> = coeffs
        .iter()
        .zip(["x", "y", "z"])
        .filter(|(c, _)| !f.is_zero(**c))
        .map(|(&c, v)| if f.is_one(c) { v.to_string() } else { format!("{}*{v}", elem_text(f, c)) })
        .collect();
    parts.join(" + ")
}

pub fn point_text(f: &Field, v: &[Elem; 3]) -> String {
    format!("({} : {} : {})", elem_text(f, v[0]), elem_text(f, v[1]), elem_text(f, v[2]))
}

fn binary_text(b: &BinaryForm) -> String {
    b.format_in(["y", "z"])
}

fn prime_values(f: &Field, v: &[Elem]) -> Vec<u64> {
    v.iter().map(|&a| f.as_prime(a).expect("prime field element")).collect()
}

pub fn count_rows(series: &CountSeries, poly: Option<&FrobeniusPoly>) -> Vec<CountRow> {
    series
        .records
        .iter()
        .map(|r| CountRow {
            d: r.d,
            q: BigUint::from(r.p).pow(r.d).to_string(),
            n: r.n.to_string(),
            trace: r.trace.to_string(),
            source: r.source.as_str(),
            predicted: poly.map(|p| predicted_count(p, r.d as usize) == r.n),
        })
        .collect()
}

pub fn zeta_section(z: &ZetaOutcome) -> ZetaSection {
    let strs = |v: &[BigInt]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
    let weil = z.chosen.as_ref().map(|p| {
        let w = weil_report(p);
        WeilRow {
            monic: w.monic,
            constant_term: w.constant_term,
            reciprocity: w.reciprocity,
            roots_on_circle: w.roots_on_circle,
            numeric_deviation: w.numeric_deviation,
        }
    });
    ZetaSection {
        k: z.k,
        traces_used: z.traces_used,
        surviving_signs: z.candidates.iter().map(|c| c.0).collect(),
        sign: z.chosen.as_ref().map(|p| p.sign),
        polynomial: z.chosen.as_ref().map(|p| strs(&p.coeffs)),
        factor: z.chosen.as_ref().and_then(|p| p.unknown_factor().ok()).map(|r| strs(&r)),
        weil,
        rank_bound: z.bound.as_ref().map(|b| b.cyclotomic_degree),
        cyclotomic_factors: z.bound.as_ref().map_or(vec![], |b| b.per_n.iter().map(|&(n, m)| [n, m as u64]).collect()),
    }
}

pub fn line_rows(lines: &[TritangentCert]) -> Vec<LineRow> {
    lines
        .iter()
        .map(|c| LineRow {
            line: line_text(&c.line),
            field_degree: c.line_field_degree(),
            split_field_degree: c.split_field_degree,
            contacts: c
                .contacts
                .iter()
                .map(|p| ContactRow {
                    point: point_text(&p.field, &p.point),
                    field_degree: p.field.degree(),
                    contact_order: 2 * p.multiplicity,
                    conjugates: p.conjugates,
                })
                .collect(),
            decomposition: c.decomposition.as_ref().map(|(a, b)| [a.pretty(), b.pretty()]),
        })
        .collect()
}

pub fn obstruction_rows(outcomes: &[ObstructionOutcome]) -> (Vec<ObstructionRow>, Vec<ObstructionFailure>) {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for o in outcomes {
        match &o.result {
            Ok((f3, f5, r)) => {
                let f: &Field = o.line.field();
                let (verdict, witness) = match &r.verdict {
                    ObsVerdict::Vanishes { b3, c1 } => ("vanishes", Some([binary_text(b3), binary_text(c1)])),
                    ObsVerdict::Nonvanishing => ("nonvanishing", None),
                };
                rows.push(ObstructionRow {
                    line: line_text(&o.line),
                    f3: f3.pretty(),
                    f5: f5.pretty(),
                    g: r.g.pretty(),
                    g_bar: binary_text(&r.g_bar),
                    f3_bar: binary_text(&r.f3_bar),
                    f5_bar: binary_text(&r.f5_bar),
                    matrix: r.matrix.iter().map(|row| prime_values(f, row)).collect(),
                    rhs: prime_values(f, &r.rhs),
                    verdict,
                    witness,
                });
            }
            Err(e) => failures.push(ObstructionFailure { line: line_text(&o.line), error: e.clone() }),
        }
    }
    (rows, failures)
}

pub fn lattice_section(l: &LatticeOutcome) -> LatticeSection {
    LatticeSection {
        conics_verified: l.conics_verified.clone(),
        gram: l.gram.as_ref().map(|g| g.matrix().to_string()),
        gram_rank: l.rank_disc.as_ref().map(|r| r.0),
        discriminant: l.rank_disc.as_ref().and_then(|r| r.1.as_ref()).map(|d| d.to_string()),
    }
}

fn record_timing(report: &mut Report, series: &CountSeries) {
    for r in series.records.iter().filter(|r| r.source == Source::Computed) {
        report.timing_ms.insert(format!("count_d{:02}", r.d), r.wall_time_ms);
    }
}

fn source_summary(series: &CountSeries) -> String {
    let mut parts: Vec<String> = Vec::new();
    for src in [Source::Computed, Source::Cached, Source::External] {
        let ds: Vec<String> = series.records.iter().filter(|r| r.source == src).map(|r| r.d.to_string()).collect();
        if !ds.is_empty() {
            parts.push(format!("{} for d = {}", src.as_str(), ds.join(", ")));
        }
    }
    parts.join("; ")
}

// ---- stages ----

pub fn stage_count(s: &Surface, dmax: u32, cache: &mut CacheStore, opts: CountOptions) -> Result<Report> {
    let series = run_counts(s, dmax, cache, opts)?;
    let mut report = Report::new(&s.spec.name, s.p);
    report.counts = count_rows(&series, None);
    record_timing(&mut report, &series);
    Ok(report)
}

fn counts_for_zeta(s: &Surface, opts: &Options, k: usize, cache: &mut CacheStore) -> Result<CountSeries> {
    let dmax = opts.dmax.unwrap_or(0).max(traces_needed(k));
    run_counts(s, dmax, cache, opts.count)
}

pub fn stage_zeta(s: &Surface, opts: &Options, cache: &mut CacheStore) -> Result<Report> {
    let k = match s.spec.k {
        Some(k) => k,
        None => resolve_k(&s.spec, &run_tritangents(s, 1)?),
    };
    let series = counts_for_zeta(s, opts, k, cache)?;
    let z = run_zeta(&series, k)?;
    let mut report = Report::new(&s.spec.name, s.p);
    report.counts = count_rows(&series, z.chosen.as_ref());
    report.zeta = Some(zeta_section(&z));
    record_timing(&mut report, &series);
    Ok(report)
}

pub fn stage_tritangent(s: &Surface, opts: &Options) -> Result<Report> {
    let lines = run_tritangents(s, opts.line_degree)?;
    let mut report = Report::new(&s.spec.name, s.p);
    report.tritangents = Some(line_rows(&lines));
    Ok(report)
}

pub fn stage_obstruct(s: &Surface) -> Result<Report> {
    let lines = run_tritangents(s, 1)?;
    let (rows, failures) = obstruction_rows(&run_obstructions(s, &lines));
    let mut report = Report::new(&s.spec.name, s.p);
    report.tritangents = Some(line_rows(&lines));
    report.obstructions = Some(rows);
    report.obstruction_failures = failures;
    Ok(report)
}

pub fn stage_lattice(s: &Surface) -> Result<Report> {
    let mut report = Report::new(&s.spec.name, s.p);
    report.lattice = Some(lattice_section(&run_lattice(s)?));
    Ok(report)
}

/// The full pipeline and the verdict.
pub fn certify(s: &Surface, opts: &Options, cache: &mut CacheStore) -> Result<Report> {
    let p = s.p;
    let mut report = Report::new(&s.spec.name, p);
    let mut steps = Vec::new();
    let mut evidence = Vec::new();

    match smoothness_check(&s.g)? {
        SingularityReport::Smooth => {
            report.smoothness = Some("smooth".into());
            steps.push(format!("smoothness_check(f6 mod {p}): the branch curve is smooth, so the reduction is good"));
        }
        SingularityReport::Singular { field, point } => {
            return Err(Error::Math(format!(
                "bad reduction at p = {p}: f6 and its partials vanish at {} over F_{p}^{}",
                point_text(&field, &point),
                field.degree()
            )));
        }
        SingularityReport::Inconclusive(why) => {
            return Err(Error::Math(format!("could not decide smoothness mod {p}: {why}")));
        }
    }

    let lines = run_tritangents(s, opts.line_degree)?;
    let k = resolve_k(&s.spec, &lines);
    let series = counts_for_zeta(s, opts, k, cache)?;
    record_timing(&mut report, &series);
    let needed = traces_needed(k);
    steps.push(format!(
        "point counts N_1..N_{} over F_{p}^d ({}); every trace t_d = N_d - 1 - q^2 satisfies |t_d| <= 22q",
        series.records.len(),
        source_summary(&series)
    ));
    if series.records.iter().any(|r| r.source == Source::External) {
        evidence.push("some counts were supplied externally and are trusted as given".into());
    }

    let z = run_zeta(&series, k)?;
    report.counts = count_rows(&series, z.chosen.as_ref());
    report.zeta = Some(zeta_section(&z));
    if report.counts.iter().any(|c| c.predicted == Some(false)) {
        return Err(Error::Math("the reconstructed polynomial does not reproduce every count".into()));
    }

    let lattice = run_lattice(s)?;
    report.lattice = Some(lattice_section(&lattice));
    if let Some(i) = lattice.conics_verified.iter().position(|ok| !ok) {
        return Err(Error::Math(format!("conic certificate {} does not satisfy f6 = c q3^2 + q2 q4", i + 1)));
    }

    let mut lower = 1usize;
    let mut lower_step = "the polarization h (h^2 = 2) gives rank >= 1".to_string();
    match (&lattice.rank_disc, lattice.conics_verified.is_empty()) {
        (Some((r, _)), false) if *r > lower => {
            lower = *r;
            lower_step = format!(
                "{} conic identities f6 = c q3^2 + q2 q4 hold exactly over Z; with the spec's intersection matrix of rank {r} (gram_rank_disc, exact) they give rank >= {r}",
                lattice.conics_verified.len()
            );
        }
        (Some(_), true) => {
            evidence.push("an intersection matrix was given without conic certificates; it is not used".into())
        }
        _ => {}
    }

    let line_counts: Vec<String> = (1..=opts.line_degree.max(1))
        .map(|e| format!("{} over F_{p}^{e}", lines.iter().filter(|c| c.line_field_degree() == e).count()))
        .collect();
    evidence.push(format!(
        "tritangent lines found: {} (exhaustive over these fields only; nothing is claimed over Q-bar)",
        line_counts.join(", ")
    ));

    let obstructions = run_obstructions(s, &lines);
    let (rows, failures) = obstruction_rows(&obstructions);
    report.tritangents = Some(line_rows(&lines));
    report.obstructions = Some(rows);
    report.obstruction_failures = failures;

    let Some(poly) = &z.chosen else {
        steps.push(lower_step);
        evidence.push("both signs of the functional equation survive; more counts are needed to fix it".into());
        let verdict = Verdict::EvidenceOnly { lower };
        report.verdict_text = Some(verdict.text());
        report.verdict = Some(verdict);
        report.steps = steps;
        report.evidence = evidence;
        return Ok(report);
    };
    let bound = z.bound.as_ref().expect("bound accompanies the chosen polynomial");
    let upper_fp = bound.cyclotomic_degree;
    let extra = z.traces_used.saturating_sub(needed as usize);
    let used = if extra == 0 {
        format!("{} traces", z.traces_used)
    } else {
        format!("{} traces ({needed} determine it, {extra} more are checked against it)", z.traces_used)
    };
    steps.push(format!(
        "char_poly_from_traces with k = {k} from {used}: only the sign {:+} passes weil_validate (integrality, reciprocity, exact Sturm count of roots on |t| = {p})",
        poly.sign
    ));
    steps.push(format!(
        "cyclotomic_part(P) = {upper_fp} (trial division by cyclotomic polynomials): rank over F_{p}-bar <= {upper_fp}, hence rank over Q-bar <= {upper_fp}"
    ));
    if let Some(dev) = weil_report(poly).numeric_deviation {
        evidence.push(format!("numeric root moduli deviate from q by at most {dev:.1e} (advisory, unused)"));
    }
    if !bound.even {
        evidence.push("the cyclotomic degree is odd, which a smooth K3 reduction does not allow".into());
    }

    let blocking = report.obstructions.as_ref().and_then(|rows| rows.iter().find(|r| r.verdict == "nonvanishing"));
    let upper = match blocking {
        Some(row) if upper_fp > 0 => {
            steps.push(format!(
                "tritangent {} = 0 over F_{p} splits over F_{p}; G = (f6 - f3^2 - l f5)/{p} is nonvanishing: the 7 x 6 system over F_{p} has no solution, so O(l) does not lift mod {}",
                row.line,
                p * p
            ));
            steps.push(format!(
                "the specialization map has torsion-free cokernel for p != 2: rank {upper_fp} over Q-bar would make it onto and O(l) would lift, so rank <= {}",
                upper_fp - 1
            ));
            upper_fp - 1
        }
        _ => {
            if report.obstructions.as_ref().is_some_and(|r| !r.is_empty()) {
                evidence.push("every computed obstruction vanishes; the tritangent classes may lift".into());
            }
            upper_fp
        }
    };
    steps.push(lower_step);
    if upper < lower {
        return Err(Error::Math(format!("inconsistent bounds: lower {lower} exceeds upper {upper}")));
    }
    let verdict = if lower == upper { Verdict::Proved { rank: lower } } else { Verdict::Bounded { lower, upper } };
    report.verdict_text = Some(verdict.text());
    report.verdict = Some(verdict);
    report.steps = steps;
    report.evidence = evidence;
    Ok(report)
}
