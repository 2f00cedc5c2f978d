//! Invariant suites shared by the `selftest` command and the acceptance target.
//!
//! Every check is exact; a failure message names the offending input.

use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::corners::corner_grid;
use crate::corpus::{random_laurent, random_pairs, random_rational, CorpusShape};
use crate::field::FieldElem;
use crate::intersection::{i_number, intersection_report, resultant_y, shape_level_im, sum_degrees_at_roots, sylvester_resultant, ShapeCorner};
use crate::laurent::LaurentPoly;
use crate::par::Exec;
use crate::piroot::{build_tree, check_degree_invariance, count_by_expansion, enumerate_final, TreeNode, XiPolicy};
use crate::report;
use crate::text::{parse_poly, print_poly};
use crate::Exp;

pub type Outcome = std::result::Result<String, String>;

pub const CORPUS_SEED: u64 = 20_240_611;

/// Sizes of the suites.
#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub corpus_pairs: usize,
    pub resultant_pairs: usize,
    pub round_trips: usize,
    pub a_max: i64,
    pub l_max: i64,
    pub exec: Exec,
}

impl Default for Config {
    fn default() -> Self {
        Config { corpus_pairs: 50, resultant_pairs: 200, round_trips: 500, a_max: 60, l_max: 4, exec: Exec::Parallel }
    }
}

pub type Pairs = [(LaurentPoly, LaurentPoly)];

pub fn corpus(cfg: &Config) -> crate::Result<Vec<(LaurentPoly, LaurentPoly)>> {
    random_pairs(CORPUS_SEED, cfg.corpus_pairs, &CorpusShape::default())
}

fn err<E: ToString>(k: usize) -> impl Fn(E) -> String {
    move |e| format!("pair {k}: {}", e.to_string())
}

/// The shape-level `I_M` for four roots with `b = 3`, `k = 1`, `l = 4`.
pub fn shape_im() -> Outcome {
    let im = shape_level_im(&[ShapeCorner { roots: 4, b: 3, k: 1, l: 4 }]).map_err(|e| e.to_string())?;
    if im.to_string() != "3*m" {
        return Err(format!("got {im}"));
    }
    let values: Vec<Exp> = (0..=5).map(|j| im.eval(2 * j + 3)).collect();
    let want: Vec<Exp> = [9, 15, 21, 27, 33, 39].into_iter().map(Exp::from_integer).collect();
    if values != want {
        return Err(format!("values {values:?}"));
    }
    Ok("I_M = 3*m; 9,15,21,27,33,39 for j = 0..5".into())
}

/// `b = 2` decision against the brute-force scan, and every witness verified.
pub fn corners(cfg: &Config) -> Outcome {
    let cells = corner_grid(cfg.a_max, cfg.l_max, cfg.exec).map_err(|e| e.to_string())?;
    if let Some(bad) = cells.iter().find(|c| !c.ok()) {
        return Err(format!("(a,l) = ({},{}): decide {:?}, brute {:?}", bad.a, bad.l, bad.deltas, bad.brute));
    }
    let witnesses: usize = cells.iter().map(|c| c.witnesses.len()).sum();
    Ok(format!("{} cells, {} witnesses verified", cells.len(), witnesses))
}

/// Subresultant PRS against the Sylvester determinant over ℚ.
pub fn resultants(cfg: &Config) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..cfg.resultant_pairs {
        let p = random_rational(&mut rng, 4, 3, 10).map_err(err(k))?;
        let q = random_rational(&mut rng, 4, 3, 10).map_err(err(k))?;
        let a = resultant_y(&p, &q).map_err(err(k))?;
        let b = sylvester_resultant(&p, &q).map_err(err(k))?;
        if a != b {
            return Err(format!("pair {k}: P = {p}, Q = {q}"));
        }
    }
    Ok(format!("{} pairs agree", cfg.resultant_pairs))
}

/// `Σ_α deg_x Q(α) = deg_x Res_y(P, Q)`.
pub fn puiseux_identity(pairs: &Pairs) -> Outcome {
    for (k, (p, q)) in pairs.iter().enumerate() {
        let lhs = sum_degrees_at_roots(p, q).map_err(err(k))?;
        let rhs = i_number(p, q).map_err(err(k))?;
        if lhs != rhs {
            return Err(format!("pair {k}: sum {lhs} vs deg Res {rhs}; P = {p}, Q = {q}"));
        }
    }
    Ok(format!("{} pairs", pairs.len()))
}

fn check_node(p: &LaurentPoly, n: &TreeNode) -> std::result::Result<(), String> {
    let direct = count_by_expansion(p, &n.root).map_err(|e| e.to_string())?;
    if direct != n.root.count {
        return Err(format!("node j0 = {}: deg f = {}, expansion count {direct}", n.root.j0, n.root.count));
    }
    if !n.children.is_empty() {
        let sum: usize = n.children.iter().map(|c| c.root.count * c.weight).sum();
        if sum != n.root.count * n.weight {
            return Err(format!("node j0 = {}: children carry {sum} of {}", n.root.j0, n.root.count * n.weight));
        }
    }
    Ok(())
}

/// Node counts against expansions, conservation under refinement, and
/// disjoint final roots covering `deg_y P`.
pub fn node_consistency(pairs: &Pairs) -> Outcome {
    let mut nodes = 0;
    for (k, (p, q)) in pairs.iter().enumerate() {
        let tree = build_tree(p).map_err(err(k))?;
        let mut failure = None;
        tree.walk(&mut |n| {
            nodes += 1;
            if failure.is_none() {
                failure = check_node(p, n).err();
            }
        });
        if let Some(e) = failure {
            return Err(format!("pair {k}: {e}"));
        }
        let en = enumerate_final(p, Some(q), &XiPolicy::Auto(16)).map_err(err(k))?;
        let n = p.deg_y().unwrap_or(0) as usize;
        if en.covered() != n {
            return Err(format!("pair {k}: final roots cover {} of {n}", en.covered()));
        }
        let mut keys: Vec<String> = en.finals.iter().map(|f| format!("{:?}{}", f.base.prefix, f.base.j0)).collect();
        keys.extend(en.singletons.iter().map(|s| format!("{:?}{}", s.base.prefix, s.base.j0)));
        let total = keys.len();
        keys.sort();
        keys.dedup();
        if keys.len() != total {
            return Err(format!("pair {k}: repeated final root"));
        }
    }
    Ok(format!("{nodes} nodes on {} trees", pairs.len()))
}

/// `deg_x P(α) = λ_τ` for `α` through each node with `f(c) ≠ 0` at `j0`.
pub fn degree_invariance(pairs: &Pairs) -> Outcome {
    let tail = [(Exp::from_integer(-40), FieldElem::from_int(3))];
    let mut nodes = 0;
    for (k, (p, _)) in pairs.iter().enumerate() {
        let tree = build_tree(p).map_err(err(k))?;
        let mut failure = None;
        tree.walk(&mut |n| {
            nodes += 1;
            if failure.is_some() {
                return;
            }
            for t in [&[][..], &tail[..]] {
                match check_degree_invariance(p, &n.root, 2, t) {
                    Ok(true) => {}
                    Ok(false) => failure = Some(format!("node j0 = {}", n.root.j0)),
                    Err(e) => failure = Some(e.to_string()),
                }
            }
        });
        if let Some(e) = failure {
            return Err(format!("pair {k}: {e}"));
        }
    }
    Ok(format!("{nodes} nodes"))
}

fn intersection_or_zero(p: &LaurentPoly, q: &LaurentPoly) -> crate::Result<Exp> {
    // a nonzero constant Q meets nothing
    if q.deg_y() == Some(0) {
        return Ok(resultant_y(p, q)?.deg_x().unwrap_or_else(Exp::zero));
    }
    i_number(p, q)
}

/// `I(P, Q) = I(P, P_y Q) − I(P, P_y)`.
pub fn decomposition(pairs: &Pairs) -> Outcome {
    for (k, (p, q)) in pairs.iter().enumerate() {
        let py = p.partial_y();
        let i_pq = i_number(p, q).map_err(err(k))?;
        let i_full = intersection_or_zero(p, &py.try_mul(q).map_err(err(k))?).map_err(err(k))?;
        let i_py = intersection_or_zero(p, &py).map_err(err(k))?;
        if i_pq != i_full - i_py {
            return Err(format!("pair {k}: {i_pq} vs {i_full} - {i_py}"));
        }
    }
    Ok(format!("{} pairs", pairs.len()))
}

fn render_outputs(pairs: &Pairs) -> std::result::Result<String, String> {
    let mut out = String::new();
    for (p, q) in pairs.iter().take(5) {
        let r = intersection_report(p, q, &XiPolicy::Auto(16)).map_err(|e| e.to_string())?;
        out += &report::render(&report::envelope("imajor", r.to_json()));
        let t = build_tree(p).map_err(|e| e.to_string())?;
        out += &report::render(&report::envelope("piroots", t.to_json()));
    }
    let grid = corner_grid(20, 2, Exec::Parallel).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = grid.iter().flat_map(|c| c.witnesses.iter().map(|w| w.to_json())).collect();
    out += &report::render(&report::envelope("corner-b2", Value::Array(rows)));
    Ok(out)
}

/// `parse ∘ print` is the identity, and JSON output is byte-stable.
pub fn round_trip(cfg: &Config, pairs: &Pairs) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for k in 0..cfg.round_trips {
        let p = random_laurent(&mut rng, k % 2 == 0).map_err(|e| e.to_string())?;
        let text = print_poly(&p);
        let back = parse_poly(&text).map_err(|e| format!("{text}: {e}"))?;
        if back != p || print_poly(&back) != text {
            return Err(format!("round trip changed {text}"));
        }
    }
    let (a, b) = (render_outputs(pairs)?, render_outputs(pairs)?);
    if a != b {
        return Err("JSON output differs between runs".into());
    }
    Ok(format!("{} round trips; {} bytes of JSON stable", cfg.round_trips, a.len()))
}

/// Result of one suite.
#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub id: usize,
    pub name: &'static str,
    pub outcome: Outcome,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.outcome.is_ok() && self.elapsed <= self.budget
    }

    /// `PASS criterion N name: detail (time)`.
    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let detail = match &self.outcome {
            Ok(d) if self.elapsed > self.budget => format!("{d}, over budget {:?}", self.budget),
            Ok(d) => d.clone(),
            Err(e) => e.clone(),
        };
        format!("{status} criterion {} {}: {detail} ({:.2?})", self.id, self.name, self.elapsed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "name": self.name,
            "passed": self.passed(),
            "detail": match &self.outcome { Ok(d) | Err(d) => d },
        })
    }
}

/// Runs every suite, reporting each result through `emit` as it completes.
pub fn run_all(cfg: &Config, mut emit: impl FnMut(&SuiteResult)) -> Vec<SuiteResult> {
    let secs = Duration::from_secs;
    let pairs = match corpus(cfg) {
        Ok(p) => p,
        Err(e) => {
            let r = SuiteResult { id: 0, name: "corpus", outcome: Err(e.to_string()), elapsed: Duration::ZERO, budget: secs(1) };
            emit(&r);
            return vec![r];
        }
    };
    type Suite<'a> = (&'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);
    let suites: Vec<Suite> = vec![
        ("shape-level I_M", secs(1), Box::new(shape_im)),
        ("corner certificates", secs(30), Box::new(|| corners(cfg))),
        ("resultant oracle", secs(60), Box::new(|| resultants(cfg))),
        ("Puiseux/intersection identity", secs(300), Box::new(|| puiseux_identity(&pairs))),
        ("node consistency", secs(600), Box::new(|| node_consistency(&pairs))),
        ("deg_x invariance", secs(600), Box::new(|| degree_invariance(&pairs))),
        ("decomposition", secs(600), Box::new(|| decomposition(&pairs))),
        ("round trip and stable JSON", secs(600), Box::new(|| round_trip(cfg, &pairs))),
    ];
    let mut out = Vec::new();
    for (k, (name, budget, run)) in suites.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let r = SuiteResult { id: k + 1, name, outcome, elapsed: start.elapsed(), budget };
        emit(&r);
        out.push(r);
    }
    out
}
