use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::PolyVectorField;
use crate::linalg::SparseEchelon;
use crate::poly::Monomial;

// Brackets evaluated in parallel between serial reduction passes.
const CHUNK: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureOptions {
    pub degree_cap: usize,
    pub round_cap: usize,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions { degree_cap: 5, round_cap: 12 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StopReason {
    /// No bracket produced a new independent field.
    Closed,
    /// A bracket of degree above the cap was produced.
    DegreeCap { field: PolyVectorField, degree: usize },
    RoundCap,
}

#[derive(Debug, Clone)]
pub struct ClosureReport {
    pub basis: Vec<PolyVectorField>,
    pub dimension: usize,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub closed: bool,
    pub rounds: usize,
    pub stop: StopReason,
    /// Index in `basis` of the first field of degree above 2, if any.
    pub nonconformal_witness: Option<usize>,
    pub brackets_evaluated: usize,
    echelon: SparseEchelon<(Monomial, usize)>,
}

impl ClosureReport {
    /// Whether `field` lies in the span of the basis.
    pub fn spans(&self, field: &PolyVectorField) -> bool {
        self.echelon.contains(field.to_sparse())
    }

    pub fn max_degree(&self) -> usize {
        self.degree_histogram.keys().next_back().copied().unwrap_or(0)
    }

    /// Brackets every pair of basis fields and checks membership in the span.
    /// Returns the first pair that escapes, if any.
    pub fn verify_pairwise_closure(&self) -> Option<(usize, usize)> {
        let n = self.basis.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        pairs
            .par_iter()
            .find_first(|&&(i, j)| {
                let b = self.basis[i].bracket(&self.basis[j]).expect("same dimension");
                !self.spans(&b)
            })
            .copied()
    }

    pub fn to_json(&self) -> Value {
        let stop = match &self.stop {
            StopReason::Closed => json!({ "reason": "closed" }),
            StopReason::DegreeCap { field, degree } => {
                json!({ "reason": "degree_cap", "degree": degree, "field": field.to_json() })
            }
            StopReason::RoundCap => json!({ "reason": "round_cap" }),
        };
        let hist: serde_json::Map<String, Value> =
            self.degree_histogram.iter().map(|(d, c)| (d.to_string(), json!(c))).collect();
        json!({
            "dimension": self.dimension,
            "closed": self.closed,
            "degree_histogram": hist,
            "rounds": self.rounds,
            "brackets_evaluated": self.brackets_evaluated,
            "stop": stop,
            "nonconformal_witness": self.nonconformal_witness.map(|i| self.basis[i].name().to_string()),
            "basis": self.basis.iter().map(PolyVectorField::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Extends `generators` to a basis of the Lie algebra they generate.
///
/// Right-normed brackets `[g_1, [g_2, … [g_{k−1}, g_k]]]` span the generated
/// algebra, so each round brackets the fields found in the previous round
/// with the generators only. Brackets within a round are evaluated in
/// parallel and then reduced serially in a fixed order, so the result does not
/// depend on scheduling.
pub fn closure(generators: &[PolyVectorField], opts: ClosureOptions) -> ClosureReport {
    let mut echelon = SparseEchelon::new();
    let mut basis: Vec<PolyVectorField> = Vec::new();
    let mut frontier: Vec<PolyVectorField> = Vec::new();
    for g in generators {
        if echelon.insert(g.to_sparse()) {
            basis.push(g.clone());
            frontier.push(g.clone());
        }
    }
    let gens = basis.clone();
    let mut rounds = 0;
    let mut brackets_evaluated = 0;
    let stop = loop {
        if frontier.is_empty() {
            break StopReason::Closed;
        }
        if rounds == opts.round_cap {
            break StopReason::RoundCap;
        }
        rounds += 1;
        // highest degree first, so an over-cap bracket surfaces early
        frontier.sort_by_key(|f| std::cmp::Reverse(f.degree().unwrap_or(0)));
        let pairs: Vec<(usize, usize)> =
            (0..frontier.len()).flat_map(|f| (0..gens.len()).map(move |g| (f, g))).collect();
        let mut next = Vec::new();
        let mut over_cap = None;
        'round: for chunk in pairs.chunks(CHUNK) {
            let brackets: Vec<PolyVectorField> = chunk
                .par_iter()
                .map(|&(f, g)| gens[g].bracket(&frontier[f]).expect("same dimension"))
                .collect();
            for b in brackets {
                brackets_evaluated += 1;
                let Some(d) = b.degree() else { continue };
                if d > opts.degree_cap {
                    over_cap = Some(StopReason::DegreeCap { field: b, degree: d });
                    break 'round;
                }
                if echelon.insert(b.to_sparse()) {
                    basis.push(b.clone());
                    next.push(b);
                }
            }
        }
        if let Some(s) = over_cap {
            break s;
        }
        frontier = next;
    };
    let mut degree_histogram = BTreeMap::new();
    for f in &basis {
        *degree_histogram.entry(f.degree().unwrap_or(0)).or_insert(0) += 1;
    }
    let nonconformal_witness = basis.iter().position(|f| f.degree().unwrap_or(0) > 2);
    ClosureReport {
        dimension: basis.len(),
        closed: stop == StopReason::Closed,
        basis,
        degree_histogram,
        rounds,
        stop,
        nonconformal_witness,
        brackets_evaluated,
        echelon,
    }
}
