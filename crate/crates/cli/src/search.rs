//! `search`: representations over ℤ/p as appendable `[rep found_i]` blocks.

use std::fmt::Write as _;
use std::path::Path;

use alexlin_core::repsearch::{search, SearchSpec};
use alexlin_core::sysfile::{RepBlock, RingSpec};

use crate::{load, Failure, Outcome};

pub fn run(
    path: &Path,
    dim: usize,
    modulus: u64,
    limit: Option<usize>,
    max_candidates: u64,
    nonabelian: bool,
) -> Result<Outcome, Failure> {
    let sf = load(path)?;
    let alphabet = sf.system.alphabet().clone();
    let mut spec = SearchSpec::new(sf.system, dim, modulus);
    spec.max_solutions = limit.unwrap_or(usize::MAX);
    spec.max_candidates = max_candidates;
    spec.nonabelian = nonabelian;
    let outcome = search(&spec).map_err(|e| Failure::Parse(e.to_string()))?;

    let mut out = String::new();
    for (i, hit) in outcome.hits.iter().enumerate() {
        let entries: Vec<Vec<i64>> = hit
            .matrices
            .iter()
            .map(|m| m.iter().map(|&e| e as i64).collect())
            .collect();
        let block = RepBlock::from_row_major(&format!("found_{}", i + 1), Some(RingSpec::Zmod(modulus)), dim, &entries);
        match &hit.result {
            Some(res) => {
                let _ = writeln!(out, "# D = {} over zmod {modulus}", res.polynomial.canonical().render());
            }
            None => {
                let _ = writeln!(out, "# D not defined for this presentation");
            }
        }
        if !hit.is_abelian_image {
            let _ = writeln!(out, "# nonabelian image");
        }
        out += &block.render(&alphabet);
        out.push('\n');
    }
    let status = if outcome.exhausted {
        "exhaustive"
    } else if outcome.capped {
        "partial: candidate cap reached"
    } else {
        "stopped at the hit limit"
    };
    let _ = writeln!(
        out,
        "# {} hit(s) from {} candidate(s), dimension {dim}, zmod {modulus} ({status})",
        outcome.hits.len(),
        outcome.candidates
    );
    let code = if outcome.capped && outcome.hits.is_empty() { 3 } else { 0 };
    Ok(Outcome { stdout: out, code })
}
