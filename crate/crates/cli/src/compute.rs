//! `validate` and `compute`.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use alexlin_core::coeff::CoeffDomain;
use alexlin_core::laurent::LaurentPoly;
use alexlin_core::rep::{validate_representation, PhiMap, Representation};
use alexlin_core::sysfile::{DomainVisitor, RepBlock, RingSpec, SystemFile};
use alexlin_core::twisted::{alexander_lin, fiber_check, wada, TwistedError};
use serde::Serialize;

use crate::{load, Failure, Outcome};

#[derive(Debug, Serialize)]
pub struct ResultRecord {
    pub file: String,
    pub rep: String,
    pub domain: String,
    pub dimension: usize,
    pub epsilon_rank: usize,
    pub n: usize,
    pub m: usize,
    pub d_polynomial: String,
    pub unit_ambiguity: String,
    pub wada: Option<WadaRecord>,
    pub fiber: Option<FiberRecord>,
    pub warnings: Vec<String>,
    pub timings_ms: Timings,
}

#[derive(Debug, Serialize)]
pub struct WadaRecord {
    pub numerator: String,
    pub denominator: String,
    pub is_polynomial: bool,
}

#[derive(Debug, Serialize)]
pub struct FiberRecord {
    pub kernel_rank: usize,
    pub expected_degree: usize,
    pub actual_span: i64,
    pub leading_coefficient: String,
    pub trailing_coefficient: String,
    pub degree_ok: bool,
    pub leading_unit: bool,
    pub trailing_unit: bool,
    pub passes: bool,
    pub reasons: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct Timings {
    pub parse: f64,
    pub alexander: f64,
    pub wada: f64,
    pub total: f64,
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

fn epsilon_warnings(sf: &SystemFile) -> Vec<String> {
    let report = sf.system.epsilon_report();
    if report.is_surjective() {
        return Vec::new();
    }
    match &report.lattice_index {
        Some(i) => vec![format!("ε is not onto ℤ^{}: image has index {i}", sf.system.d())],
        None => vec![format!("ε is not onto ℤ^{}: image has lower rank", sf.system.d())],
    }
}

struct Validate<'a> {
    sf: &'a SystemFile,
    block: &'a RepBlock,
}

impl DomainVisitor for Validate<'_> {
    type Output = Result<Vec<String>, Failure>;

    fn visit<R: CoeffDomain>(self, domain: R) -> Self::Output {
        let rep = self
            .sf
            .build_representation(self.block, domain)
            .map_err(|e| Failure::Parse(e.to_string()))?;
        let report =
            validate_representation(&self.sf.system, &rep).map_err(|e| Failure::Parse(e.to_string()))?;
        let alphabet = self.sf.system.alphabet();
        let mut problems = Vec::new();
        for (g, det) in &report.non_invertible {
            problems.push(format!(
                "image of generator {} is not invertible (det = {})",
                alphabet.get(*g),
                det.render()
            ));
        }
        for (i, _) in &report.failing_relators {
            let word = alphabet.render_word(&self.sf.system.presentation().relators()[*i]);
            problems.push(format!("relator {} ({word}) does not map to the identity", i + 1));
        }
        Ok(problems)
    }
}

pub fn validate(path: &Path) -> Result<Outcome, Failure> {
    let sf = load(path)?;
    let sys = &sf.system;
    let mut out = String::new();
    let mut ok = true;
    let _ = writeln!(
        out,
        "group: {} generator(s), {} relator(s), distinguished {}",
        sys.alphabet().len(),
        sys.m(),
        sys.distinguished_generator()
    );
    let _ = writeln!(out, "epsilon: homomorphism onto a rank {} lattice: ok", sys.d());
    for w in epsilon_warnings(&sf) {
        let _ = writeln!(out, "warning: {w}");
    }
    let _ = writeln!(out, "ring: {}", sf.ring);
    for block in &sf.reps {
        let domain = sf.domain_of(block);
        let problems = domain
            .dispatch(Validate { sf: &sf, block })
            .map_err(|e| Failure::Parse(e.to_string()))??;
        if problems.is_empty() {
            let _ = writeln!(out, "rep {}: ok (dimension {} over {domain})", block.name, block.dimension);
        } else {
            ok = false;
            let _ = writeln!(out, "rep {}: FAIL", block.name);
            for p in problems {
                let _ = writeln!(out, "  - line {}: {p}", block.line);
            }
        }
    }
    let _ = writeln!(out, "{}", if ok { "valid" } else { "invalid" });
    Ok(Outcome {
        stdout: out,
        code: if ok { 0 } else { 1 },
    })
}

struct Compute<'a> {
    file: String,
    sf: &'a SystemFile,
    block: Option<&'a RepBlock>,
    fiber: Option<Option<usize>>,
    started: Instant,
    parse_ms: f64,
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Invalid(e.to_string())
}

impl DomainVisitor for Compute<'_> {
    type Output = Result<ResultRecord, Failure>;

    fn visit<R: CoeffDomain>(self, domain: R) -> Self::Output {
        let sf = self.sf;
        let sys = &sf.system;
        let rep = match self.block {
            Some(b) => sf.build_representation(b, domain).map_err(|e| Failure::Parse(e.to_string()))?,
            None => {
                let ring = alexlin_core::laurent::LaurentRing::new(domain, sf.variables());
                Representation::trivial(&ring, 1, sys.alphabet().len())
            }
        };
        let line = self.block.map_or(0, |b| b.line);
        let phi = PhiMap::new(sys, &rep).map_err(|e| match self.block {
            Some(_) => Failure::Invalid(format!("line {line}: {e}")),
            None => invalid(e),
        })?;
        let mut warnings = epsilon_warnings(sf);

        let t0 = Instant::now();
        let res = alexander_lin(&phi).map_err(invalid)?;
        let alexander = ms(t0);
        if res.polynomial.is_zero() {
            warnings.push("D is zero: every maximal minor vanishes".to_string());
        }

        let t1 = Instant::now();
        let w = match wada(&phi, &res) {
            Ok(w) => Some(WadaRecord {
                numerator: w.numerator.render(),
                denominator: w.denominator.render(),
                is_polynomial: w.is_polynomial,
            }),
            Err(TwistedError::ZeroDenominator) => {
                warnings.push("W is undefined: det(I - Φ(x)) = 0".to_string());
                None
            }
            Err(e) => return Err(invalid(e)),
        };
        let wada_ms = ms(t1);

        let fiber = match self.fiber {
            None => None,
            Some(k) => {
                let r = fiber_check(&res, k).map_err(invalid)?;
                Some(FiberRecord {
                    kernel_rank: k.unwrap_or(res.n),
                    expected_degree: r.expected_degree,
                    actual_span: r.actual_span,
                    leading_coefficient: r.leading_coeff.render(),
                    trailing_coefficient: r.trailing_coeff.render(),
                    degree_ok: r.degree_ok,
                    leading_unit: r.leading_unit,
                    trailing_unit: r.trailing_unit,
                    passes: r.passes(),
                    reasons: r.reasons,
                })
            }
        };

        Ok(ResultRecord {
            file: self.file,
            rep: self.block.map_or_else(|| "trivial".to_string(), |b| b.name.clone()),
            domain: String::new(),
            dimension: rep.dim(),
            epsilon_rank: sys.d(),
            n: res.n,
            m: res.m,
            d_polynomial: canonical(&res.polynomial),
            unit_ambiguity: res.unit_ambiguity.clone(),
            wada: w,
            fiber,
            warnings,
            timings_ms: Timings {
                parse: self.parse_ms,
                alexander,
                wada: wada_ms,
                total: ms(self.started),
            },
        })
    }
}

fn canonical<R: CoeffDomain>(p: &LaurentPoly<R>) -> String {
    p.canonical().render()
}

pub fn compute(path: &Path, rep: Option<&str>, fiber: Option<Option<usize>>, json: bool) -> Result<Outcome, Failure> {
    let started = Instant::now();
    let sf = load(path)?;
    let parse_ms = ms(started);
    let block = match rep {
        Some(name) => Some(
            sf.rep(name)
                .ok_or_else(|| Failure::Invalid(format!("no representation named `{name}`")))?,
        ),
        None => sf.reps.first(),
    };
    let domain: RingSpec = block.map_or(sf.ring, |b| sf.domain_of(b));
    let job = Compute {
        file: path.display().to_string(),
        sf: &sf,
        block,
        fiber,
        started,
        parse_ms,
    };
    let mut record = domain.dispatch(job).map_err(|e| Failure::Parse(e.to_string()))??;
    record.domain = domain.to_string();
    let stdout = if json {
        serde_json::to_string_pretty(&record).expect("record serializes") + "\n"
    } else {
        render(&record)
    };
    Ok(Outcome::ok(stdout))
}

fn render(r: &ResultRecord) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "file: {}", r.file);
    let _ = writeln!(out, "rep: {} (dimension {} over {})", r.rep, r.dimension, r.domain);
    let _ = writeln!(out, "n = {}, m = {}", r.n, r.m);
    let _ = writeln!(out, "D = {}", r.d_polynomial);
    let _ = writeln!(out, "  {}", r.unit_ambiguity);
    match &r.wada {
        Some(w) if w.is_polynomial => {
            let _ = writeln!(out, "W = {}", w.numerator);
        }
        Some(w) => {
            let _ = writeln!(out, "W = ({}) / ({})", w.numerator, w.denominator);
        }
        None => {
            let _ = writeln!(out, "W = undefined");
        }
    }
    if let Some(f) = &r.fiber {
        let _ = writeln!(
            out,
            "fiber check (n = {}, nN = {}): {}",
            f.kernel_rank,
            f.expected_degree,
            if f.passes { "pass" } else { "FAIL" }
        );
        let _ = writeln!(
            out,
            "  span {}, leading {}, trailing {}",
            f.actual_span, f.leading_coefficient, f.trailing_coefficient
        );
        for reason in &f.reasons {
            let _ = writeln!(out, "  - {reason}");
        }
    }
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}
