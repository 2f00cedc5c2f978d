//! π-approximations of roots at infinity, their refinement tree, and the
//! classification of final π-roots into major and minor ones.
//!
//! A π-approximation `τ = Σ_{j>j₀} a_j x^j + π x^{j₀}` is stored as its prefix
//! (the `a_j`) and its order `j₀`. Substituting `y ↦ y + prefix` and taking the
//! leading form in the direction of `j₀` gives `x^{λ_τ} f_{P,τ}(z)` with
//! `z = x^{−j₀} y`.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldElem, Tower, UniPoly, Var};
use crate::laurent::{Direction, LaurentPoly};
use crate::puiseux::{self, PuiseuxSeries, RootSeries};
use crate::Exp;

/// Upper bound on refinement-tree size, as a guard against runaway input.
const MAX_TREE_NODES: usize = 20_000;

/// Default number of ξ candidates tried by [`XiPolicy::Auto`].
pub const DEFAULT_XI_TRIALS: usize = 16;

fn exp_json(e: Exp) -> Value {
    Value::String(e.to_string())
}

fn prefix_json(prefix: &[(Exp, FieldElem)]) -> Value {
    Value::Array(prefix.iter().map(|(e, c)| json!([exp_json(*e), c.to_json()])).collect())
}

fn prefix_string(prefix: &[(Exp, FieldElem)]) -> String {
    if prefix.is_empty() {
        return "0".into();
    }
    prefix.iter().map(|(e, c)| format!("({c})*x^({e})")).collect::<Vec<_>>().join(" + ")
}

/// A π-approximation together with `f_{P,τ}`, `λ_τ` and `|D_τ^P|`.
#[derive(Clone, Debug)]
pub struct PiRoot {
    pub prefix: Vec<(Exp, FieldElem)>,
    pub j0: Exp,
    pub f: UniPoly,
    pub lambda: Exp,
    pub count: usize,
}

impl PiRoot {
    pub fn tower(&self) -> &Tower {
        self.f.tower()
    }

    /// Whether `τ` is a π-root, i.e. `deg f > 0`.
    pub fn is_pi_root(&self) -> bool {
        self.count > 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "prefix": prefix_json(&self.prefix),
            "j0": exp_json(self.j0),
            "f": self.f.to_json(),
            "lambda": exp_json(self.lambda),
            "count": self.count,
        })
    }
}

fn tower_of_prefix(prefix: &[(Exp, FieldElem)]) -> Result<Tower> {
    prefix.iter().try_fold(Tower::rationals(), |t, (_, c)| t.join(c.tower()))
}

/// `φ_τ(P) = P(y + prefix)` over the tower of the prefix.
pub fn shifted(p: &LaurentPoly, prefix: &[(Exp, FieldElem)]) -> Result<LaurentPoly> {
    let t = tower_of_prefix(prefix)?.join(p.tower())?;
    p.lift(&t)?.apply_shift(prefix)
}

/// Reads `f` and `λ` off an already shifted polynomial.
fn node_from_shifted(phi: &LaurentPoly, prefix: Vec<(Exp, FieldElem)>, j0: Exp) -> Result<PiRoot> {
    if phi.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = Direction::of_order(j0);
    let lf = phi.leading_form(&d)?;
    let v = phi.valuation(&d)?;
    let lambda = v / Exp::from_integer(d.rho());
    let n = lf.en.y as usize;
    let mut cs = vec![FieldElem::zero(); n + 1];
    for (e, c) in lf.form.terms() {
        cs[e.y as usize] = c;
    }
    let f = UniPoly::new(&cs, Var::Pi)?.lift(phi.tower())?;
    Ok(PiRoot { prefix, j0, count: n, f, lambda })
}

/// Computes `f_{P,τ}`, `λ_τ` and `|D_τ^P|` for `τ = prefix + π x^{j0}`.
pub fn f_lambda(p: &LaurentPoly, prefix: &[(Exp, FieldElem)], j0: Exp) -> Result<PiRoot> {
    if prefix.iter().any(|(e, _)| *e <= j0) {
        return Err(Error::Domain("prefix exponents must exceed j0".into()));
    }
    if prefix.windows(2).any(|w| w[0].0 <= w[1].0) {
        return Err(Error::Domain("prefix exponents must be strictly descending".into()));
    }
    node_from_shifted(&shifted(p, prefix)?, prefix.to_vec(), j0)
}

/// The next order below `j0`: the order of the predecessor of `dir(j0)` in
/// `Dir(φ)`, or `j0 − 1` when there is none.
fn next_order(phi: &LaurentPoly, j0: Exp) -> Exp {
    let (_, pred) = phi.succ_pred(&Direction::of_order(j0));
    pred.and_then(|d| d.order()).unwrap_or(j0 - Exp::one())
}

fn extend_prefix(prefix: &[(Exp, FieldElem)], j0: Exp, lambda: &FieldElem) -> Result<Vec<(Exp, FieldElem)>> {
    let t = tower_of_prefix(prefix)?.join(lambda.tower())?;
    let mut out: Vec<(Exp, FieldElem)> = prefix.iter().map(|(e, c)| Ok((*e, c.lift(&t)?))).collect::<Result<_>>()?;
    if !lambda.is_zero() {
        out.push((j0, lambda.lift(&t)?));
    }
    Ok(out)
}

/// Refines `τ` at a root `λ` of `f_{P,τ}`: the approximation
/// `prefix + λ x^{j0} + π x^{j1}` with `j1` the next order below `j0`.
pub fn refine(p: &LaurentPoly, tau: &PiRoot, lambda: &FieldElem) -> Result<PiRoot> {
    let r = tau.f.root_multiplicity(lambda)?;
    if r == 0 {
        return Err(Error::NotARoot { value: lambda.to_string() });
    }
    let prefix = extend_prefix(&tau.prefix, tau.j0, lambda)?;
    let phi = shifted(p, &prefix)?;
    let j1 = next_order(&phi, tau.j0);
    node_from_shifted(&phi, prefix, j1)
}

/// Order of the initial node: the largest degree of a root, read off the
/// Newton polygon (0 when every root is zero).
pub fn initial_order(p: &LaurentPoly) -> Result<Exp> {
    let n = p.deg_y().ok_or(Error::ZeroPolynomial)?;
    if n < 1 {
        return Err(Error::Domain("P must have positive degree in y".into()));
    }
    let cs = p.y_coeffs();
    let lead = cs[n as usize].deg_x().unwrap();
    let bound = cs
        .iter()
        .enumerate()
        .take(n as usize)
        .filter_map(|(k, c)| c.deg_x().map(|d| (d - lead) / Exp::from_integer(n - k as i64)))
        .max();
    Ok(bound.unwrap_or_else(Exp::zero))
}

/// A node of the refinement tree.
///
/// `weight` is the number of conjugate copies the node stands for (the
/// product of the degrees of the field extensions along its path).
#[derive(Clone, Debug)]
pub struct TreeNode {
    pub root: PiRoot,
    pub weight: usize,
    /// Coefficient chosen at the parent's order to reach this node.
    pub edge: Option<FieldElem>,
    /// All roots approximated by this node agree exactly with the prefix.
    pub exact: bool,
    pub children: Vec<TreeNode>,
}

impl TreeNode {
    pub fn to_json(&self) -> Value {
        let mut v = self.root.to_json();
        let obj = v.as_object_mut().unwrap();
        obj.insert("weight".into(), json!(self.weight));
        if self.exact {
            obj.insert("exact".into(), json!(true));
        }
        obj.insert("children".into(), Value::Array(self.children.iter().map(TreeNode::to_json).collect()));
        v
    }

    /// Visits every node depth first, parents before children.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a TreeNode)) {
        f(self);
        for c in &self.children {
            c.walk(f);
        }
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |_| n += 1);
        n
    }
}

/// Builds the refinement tree of `P`, descending until every branch isolates
/// one root with `λ < 0` (or an exact root).
pub fn build_tree(p: &LaurentPoly) -> Result<TreeNode> {
    let j0 = initial_order(p)?;
    let phi = p.clone();
    let root = node_from_shifted(&phi, Vec::new(), j0)?;
    let mut budget = MAX_TREE_NODES;
    grow(phi, root, 1, None, &mut budget)
}

fn is_exact_cluster(phi: &LaurentPoly, node: &PiRoot) -> bool {
    node.count > 0
        && phi.ord_y().is_some_and(|k| k as usize >= node.count)
        && node.f.coeffs().iter().take(node.count).all(FieldElem::is_zero)
}

fn grow(phi: LaurentPoly, root: PiRoot, weight: usize, edge: Option<FieldElem>, budget: &mut usize) -> Result<TreeNode> {
    if *budget == 0 {
        return Err(Error::Internal("refinement tree too large".into()));
    }
    *budget -= 1;
    let exact = is_exact_cluster(&phi, &root);
    if root.count == 0 || (root.count == 1 && root.lambda < Exp::zero()) || (exact && root.count > 1) {
        return Ok(TreeNode { root, weight, edge, exact, children: Vec::new() });
    }
    let mut children = Vec::new();
    for fam in root.f.root_families()? {
        let t = fam.value.tower().clone();
        let prefix = extend_prefix(&root.prefix, root.j0, &fam.value)?;
        let mut phi1 = phi.lift(&t)?;
        if !fam.value.is_zero() {
            phi1 = phi1.apply_shift(&[(root.j0, fam.value.clone())])?;
        }
        let j1 = next_order(&phi1, root.j0);
        let child = node_from_shifted(&phi1, prefix, j1)?;
        if child.count != fam.multiplicity {
            return Err(Error::Internal(format!(
                "refinement at {} gave {} roots, expected multiplicity {}",
                fam.value, child.count, fam.multiplicity
            )));
        }
        children.push(grow(phi1, child, weight * fam.conjugates, Some(fam.value.clone()), budget)?);
    }
    Ok(TreeNode { root, weight, edge, exact, children })
}

/// Whether `λ` strictly decreases along every parent–child edge between π-roots.
pub fn check_lambda_monotone(tree: &TreeNode) -> bool {
    tree.children.iter().all(|c| (!c.root.is_pi_root() || c.root.lambda < tree.root.lambda) && check_lambda_monotone(c))
}

/// Kind of a final π-root, by the sign of `λ_τ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootKind {
    Major,
    Minor,
    /// `λ_τ < 0`; impossible for a Jacobian pair, reported for generic input.
    Negative,
}

impl RootKind {
    fn of(lambda: Exp) -> RootKind {
        if lambda > Exp::zero() {
            RootKind::Major
        } else if lambda.is_zero() {
            RootKind::Minor
        } else {
            RootKind::Negative
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RootKind::Major => "major",
            RootKind::Minor => "minor",
            RootKind::Negative => "negative",
        }
    }
}

/// A final π-root: `f` squarefree of degree > 1.
#[derive(Clone, Debug)]
pub struct FinalPiRoot {
    pub base: PiRoot,
    pub weight: usize,
    pub kind: RootKind,
    /// `δ_τ`, the minimum of `δ_α` over the roots `α` in `D_τ`.
    pub delta: Option<Exp>,
    /// `λ_τ^Q = deg_x Q(τ)`.
    pub lambda_q: Option<Exp>,
}

impl FinalPiRoot {
    /// Number of roots of `P` accounted for, conjugates included.
    pub fn total(&self) -> usize {
        self.base.count * self.weight
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.base.to_json();
        let obj = v.as_object_mut().unwrap();
        obj.insert("kind".into(), json!(self.kind.as_str()));
        obj.insert("weight".into(), json!(self.weight));
        obj.insert("delta".into(), self.delta.map(exp_json).unwrap_or(Value::Null));
        obj.insert("lambda_q".into(), self.lambda_q.map(exp_json).unwrap_or(Value::Null));
        v
    }
}

/// A root isolated (count 1) before reaching any final π-root.
#[derive(Clone, Debug)]
pub struct Singleton {
    pub base: PiRoot,
    pub weight: usize,
}

impl Singleton {
    pub fn negative(&self) -> bool {
        self.base.lambda < Exp::zero()
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.base.to_json();
        let obj = v.as_object_mut().unwrap();
        obj.insert("weight".into(), json!(self.weight));
        obj.insert("negative".into(), json!(self.negative()));
        v
    }
}

/// How to choose the constant `ξ` added to `P` to restore genericity.
#[derive(Clone, Debug)]
pub enum XiPolicy {
    /// Use `P` unchanged and fail on a genericity violation.
    None,
    Fixed(FieldElem),
    /// Try `0, 1, −1, 2, −2, …` up to the given number of candidates.
    Auto(usize),
}

/// Nonvanishing witnesses for one `λ_τ = 0` approximation.
#[derive(Clone, Debug)]
pub struct XiCheck {
    pub prefix: Vec<(Exp, FieldElem)>,
    pub j0: Exp,
    /// Discriminant of `f_{P,τ}` (absent when `deg f < 2`).
    pub discriminant: Option<FieldElem>,
    /// Resultant of `f_{P,τ}` and `f_{Q,τ}` (absent without a partner).
    pub resultant: Option<FieldElem>,
}

impl XiCheck {
    pub fn to_json(&self) -> Value {
        json!({
            "prefix": prefix_json(&self.prefix),
            "j0": exp_json(self.j0),
            "discriminant": self.discriminant.as_ref().map(FieldElem::to_json).unwrap_or(Value::Null),
            "resultant": self.resultant.as_ref().map(FieldElem::to_json).unwrap_or(Value::Null),
        })
    }
}

/// Result of [`enumerate_final`].
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub xi: FieldElem,
    pub tree: TreeNode,
    pub finals: Vec<FinalPiRoot>,
    pub singletons: Vec<Singleton>,
    pub certificate: Vec<XiCheck>,
}

impl Enumeration {
    /// `Σ |D_τ^P|` over final roots and singletons, conjugates included.
    pub fn covered(&self) -> usize {
        self.finals.iter().map(FinalPiRoot::total).sum::<usize>()
            + self.singletons.iter().map(|s| s.base.count * s.weight).sum::<usize>()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "xi": self.xi.to_json(),
            "tree": self.tree.to_json(),
            "finals": self.finals.iter().map(FinalPiRoot::to_json).collect::<Vec<_>>(),
            "singletons": self.singletons.iter().map(Singleton::to_json).collect::<Vec<_>>(),
            "certificate": self.certificate.iter().map(XiCheck::to_json).collect::<Vec<_>>(),
        })
    }
}

fn xi_candidates(n: usize) -> impl Iterator<Item = i64> {
    (0..n as i64).map(|k| if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) })
}

/// Enumerates the final π-roots of `P` (and the singletons reached first),
/// with `δ_τ` and `λ_τ^Q` when a partner `Q` is given.
pub fn enumerate_final(p: &LaurentPoly, q: Option<&LaurentPoly>, policy: &XiPolicy) -> Result<Enumeration> {
    // expansions must run over a field containing the coefficients of both
    let (p, q) = match q {
        Some(q) => {
            let t = p.tower().join(q.tower())?;
            (p.lift(&t)?, Some(q.lift(&t)?))
        }
        None => (p.clone(), None),
    };
    let (p, q) = (&p, q.as_ref());
    match policy {
        XiPolicy::None => enumerate_with_xi(p, q, FieldElem::zero()),
        XiPolicy::Fixed(xi) => enumerate_with_xi(p, q, xi.clone()),
        XiPolicy::Auto(trials) => {
            for k in xi_candidates(*trials) {
                match enumerate_with_xi(p, q, FieldElem::from_int(k)) {
                    Err(Error::NeedsXiShift { .. }) => {}
                    other => return other,
                }
            }
            Err(Error::XiTrialsExhausted { trials: *trials })
        }
    }
}

/// `(ξ, certificate)` making every `λ_τ = 0` approximation generic.
pub fn choose_xi(p: &LaurentPoly, q: Option<&LaurentPoly>, trials: usize) -> Result<(FieldElem, Vec<XiCheck>)> {
    let e = enumerate_final(p, q, &XiPolicy::Auto(trials))?;
    Ok((e.xi, e.certificate))
}

fn enumerate_with_xi(p: &LaurentPoly, q: Option<&LaurentPoly>, xi: FieldElem) -> Result<Enumeration> {
    let px = if xi.is_zero() { p.clone() } else { p.try_add(&LaurentPoly::constant(xi.clone()))? };
    if puiseux::squarefree_parts(&px)?.iter().any(|(_, k)| *k > 1) {
        return Err(Error::Domain("P must be squarefree in y".into()));
    }
    let tree = build_tree(&px)?;
    let certificate = genericity_checks(&px, q, &tree)?;
    let mut finals = Vec::new();
    let mut singletons = Vec::new();
    collect_final(&tree, &mut finals, &mut singletons);
    if let Some(q) = q {
        for fr in &mut finals {
            fr.lambda_q = Some(f_lambda(q, &fr.base.prefix, fr.base.j0)?.lambda);
            fr.delta = Some(delta_of_node(&px, q, &fr.base)?);
        }
    }
    Ok(Enumeration { xi, tree, finals, singletons, certificate })
}

fn collect_final(node: &TreeNode, finals: &mut Vec<FinalPiRoot>, singletons: &mut Vec<Singleton>) {
    let r = &node.root;
    if r.count >= 2 && r.f.is_squarefree() {
        finals.push(FinalPiRoot { base: r.clone(), weight: node.weight, kind: RootKind::of(r.lambda), delta: None, lambda_q: None });
        return;
    }
    if r.count == 1 {
        singletons.push(Singleton { base: r.clone(), weight: node.weight });
        return;
    }
    for c in &node.children {
        collect_final(c, finals, singletons);
    }
}

fn check_generic(q: Option<&LaurentPoly>, tau: &PiRoot, out: &mut Vec<XiCheck>) -> Result<()> {
    let fail = |reason: &str| Error::NeedsXiShift {
        prefix: prefix_string(&tau.prefix),
        j0: tau.j0.to_string(),
        reason: reason.into(),
    };
    let discriminant = if tau.count >= 2 { Some(tau.f.discriminant()?) } else { None };
    if !tau.f.is_squarefree() {
        return Err(fail("f has a multiple root"));
    }
    let resultant = match q {
        Some(q) => {
            let fq = f_lambda(q, &tau.prefix, tau.j0)?.f;
            let r = tau.f.resultant(&fq)?;
            if r.is_zero() {
                return Err(fail("f_P and f_Q share a root"));
            }
            Some(r)
        }
        None => None,
    };
    out.push(XiCheck { prefix: tau.prefix.clone(), j0: tau.j0, discriminant, resultant });
    Ok(())
}

/// Checks every π-approximation with `λ_τ = 0` along the tree, including those
/// at orders strictly between a node and its child (where `f` is a monomial).
fn genericity_checks(p: &LaurentPoly, q: Option<&LaurentPoly>, tree: &TreeNode) -> Result<Vec<XiCheck>> {
    let mut out = Vec::new();
    // above the initial order λ(j) = u + n·j along the top vertex
    let n = Exp::from_integer(tree.root.count as i64);
    let js = -(tree.root.lambda - n * tree.root.j0) / n;
    if js > tree.root.j0 {
        check_generic(q, &f_lambda(p, &[], js)?, &mut out)?;
    }
    let mut stack = vec![tree];
    while let Some(node) = stack.pop() {
        if node.root.is_pi_root() && node.root.lambda.is_zero() {
            check_generic(q, &node.root, &mut out)?;
        }
        for c in &node.children {
            // On (j1, j0) the approximation sees a single vertex (u, r) of φ,
            // so λ(j) = u + r·j.
            let (j0, j1) = (node.root.j0, c.root.j0);
            let r = Exp::from_integer(c.root.count as i64);
            if !r.is_zero() {
                let u = c.root.lambda - r * j1;
                let js = -u / r;
                if js > j1 && js < j0 {
                    let tau = f_lambda(p, &c.root.prefix, js)?;
                    check_generic(q, &tau, &mut out)?;
                }
            }
            stack.push(c);
        }
    }
    Ok(out)
}

/// Root series of `P` in `D_τ`, exact down to `depth` (which should lie below
/// `j0`), expressed over the tower of each family.
pub fn roots_in_node(p: &LaurentPoly, tau: &PiRoot, depth: Exp) -> Result<Vec<RootSeries>> {
    let phi = shifted(p, &tau.prefix)?;
    let mut out = Vec::new();
    for r in puiseux::expand_roots_below(&phi, Some(tau.j0), depth)? {
        let inside = match r.series.leading() {
            Some((e, _)) => *e <= tau.j0,
            None => r.series.trunc().is_none_or(|t| t < tau.j0),
        };
        if !inside {
            continue;
        }
        let t = r.series.tower().clone();
        let mut terms: Vec<(Exp, FieldElem)> = tau.prefix.iter().map(|(e, c)| Ok((*e, c.lift(&t)?))).collect::<Result<_>>()?;
        terms.extend(r.series.terms().iter().cloned());
        let series = PuiseuxSeries::new(terms, r.series.trunc())?.lift(&t)?;
        out.push(RootSeries { series, ..r });
    }
    Ok(out)
}

/// `|D_τ^P|` by counting expanded roots of `φ_τ(P)` of degree at most `j0`.
pub fn count_by_expansion(p: &LaurentPoly, tau: &PiRoot) -> Result<usize> {
    // membership only depends on the terms down to j0
    Ok(roots_in_node(p, tau, tau.j0 - Exp::one())?.iter().map(RootSeries::count).sum())
}

/// Checks `deg_x P(α) = λ_τ` for `α = prefix + c·x^{j0} + tail`, over the
/// first `samples` values `c ∈ {0, 1, −1, 2, …}` with `f_{P,τ}(c) ≠ 0`.
///
/// Terms of `tail` must have exponents below `j0`.
pub fn check_degree_invariance(p: &LaurentPoly, tau: &PiRoot, samples: usize, tail: &[(Exp, FieldElem)]) -> Result<bool> {
    if tail.iter().any(|(e, _)| *e >= tau.j0) {
        return Err(Error::Domain("tail terms must lie below j0".into()));
    }
    let tower = tau.tower().clone();
    let mut done = 0;
    for k in xi_candidates(4 * samples + 8) {
        if done == samples {
            break;
        }
        let c = FieldElem::from_int(k).lift(&tower)?;
        if tau.f.eval(&c)?.is_zero() {
            continue;
        }
        let mut terms = tau.prefix.clone();
        terms.push((tau.j0, c));
        terms.extend(tail.iter().cloned());
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| Ok((e, c.lift(&tower)?))).collect::<Result<Vec<_>>>()?;
        let alpha = PuiseuxSeries::exact(terms)?;
        let p = p.lift(&p.tower().join(alpha.tower())?)?;
        match puiseux::eval_series(&p, &alpha)?.certified_degree()? {
            puiseux::Degree::Finite(d) if d == tau.lambda => done += 1,
            _ => return Ok(false),
        }
    }
    Ok(done == samples)
}

/// `δ_α = min{deg_x(α − β) : β ∈ 𝓡(Q)}`, computed from the Newton polygons of
/// `Q(y + S)` for the successive prefixes `S` of `α`.
///
/// `α` must be expanded over a field that already contains the coefficients
/// of `Q`.
pub fn delta_of_root(alpha: &PuiseuxSeries, q: &LaurentPoly) -> Result<Exp> {
    let undecided = || Error::Undecided { trunc: alpha.trunc().map(|t| t.to_string()).unwrap_or_else(|| "exact".into()) };
    let t = alpha.tower().join(q.tower())?;
    let q = q.lift(&t)?;
    let terms = alpha.terms();
    let mut best: Option<Exp> = None;
    for k in 0..=terms.len() {
        let s: Vec<(Exp, FieldElem)> = terms[..k].iter().map(|(e, c)| Ok((*e, c.lift(&t)?))).collect::<Result<_>>()?;
        let qs = q.apply_shift(&s)?;
        let upper = if k == 0 { None } else { Some(terms[k - 1].0) };
        let below = terms.get(k).map(|(e, _)| *e);
        let has_zero_root = qs.ord_y().is_some_and(|o| o > 0);
        let mu = if has_zero_root { None } else { qs.dir_set().first().and_then(Direction::order) };
        let candidate = match (below, mu) {
            (Some(e), Some(m)) => Some(e.max(m)),
            (Some(e), None) if has_zero_root => Some(e),
            (Some(_), None) => None,
            // α − S is zero (exact α) or of degree at most the truncation order
            (None, _) if has_zero_root => return Err(undecided()),
            (None, None) => None,
            (None, Some(m)) => match alpha.trunc() {
                Some(tr) if m <= tr => return Err(undecided()),
                _ => Some(m),
            },
        };
        if let Some(c) = candidate {
            if upper.is_none_or(|u| c < u) {
                best = Some(best.map_or(c, |b| b.min(c)));
            }
        }
    }
    best.ok_or_else(|| Error::Domain("Q has no roots in y".into()))
}

/// `δ_τ` as the minimum of `δ_α` over the roots in `D_τ`, deepening the
/// expansion until every value is certified.
fn delta_of_node(p: &LaurentPoly, q: &LaurentPoly, tau: &PiRoot) -> Result<Exp> {
    let base = (tau.j0 - Exp::one()).min(puiseux::default_depth(p));
    let step = -puiseux::default_depth(p);
    let mut depth = base;
    let mut last = None;
    for _ in 0..=puiseux::DEFAULT_STEP_LIMIT {
        let roots = roots_in_node(p, tau, depth)?;
        let mut best: Option<Exp> = None;
        let mut undecided = false;
        for r in &roots {
            match delta_of_root(&r.series, q) {
                Ok(d) => best = Some(best.map_or(d, |b| b.min(d))),
                Err(e @ Error::Undecided { .. }) => {
                    undecided = true;
                    last = Some(e);
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if !undecided {
            return best.ok_or_else(|| Error::Internal("final π-root without roots".into()));
        }
        depth -= step;
    }
    Err(last.unwrap())
}

/// Outcome of [`check_zero_lambda_reachable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroLambda {
    pub j0: Exp,
    /// The order lies past the last term of a finite (exact) root.
    pub exact_root: bool,
}

/// An order `j0` at which the π-approximation of the root `α` has `λ_τ = 0`
/// (the largest such order).
pub fn check_zero_lambda_reachable(p: &LaurentPoly, alpha: &PuiseuxSeries) -> Result<ZeroLambda> {
    let t = alpha.tower().join(p.tower())?;
    let p = p.lift(&t)?;
    let terms = alpha.terms();
    for k in 0..=terms.len() {
        let s: Vec<(Exp, FieldElem)> = terms[..k].iter().map(|(e, c)| Ok((*e, c.lift(&t)?))).collect::<Result<_>>()?;
        let phi = p.apply_shift(&s)?;
        let upper = if k == 0 { None } else { Some(terms[k - 1].0) };
        let lower = match terms.get(k) {
            Some((e, _)) => Some(*e),
            None => alpha.trunc(),
        };
        // λ(j) = max over the support of u + v·j
        if phi.terms().any(|(e, _)| e.y == 0 && e.x > Exp::zero()) {
            continue;
        }
        let exact_root = k == terms.len() && alpha.is_exact();
        let js = phi.terms().filter(|(e, _)| e.y > 0).map(|(e, _)| -e.x / Exp::from_integer(e.y)).min();
        let inside = |j: Exp| lower.is_none_or(|l| j >= l) && upper.is_none_or(|u| j < u);
        if let Some(js) = js.filter(|j| inside(*j)) {
            return Ok(ZeroLambda { j0: js, exact_root });
        }
        let flat = phi.terms().any(|(e, _)| e.y == 0 && e.x.is_zero());
        if flat && js.is_none_or(|j| upper.is_some_and(|u| j >= u)) {
            if let Some(u) = upper {
                let j = lower.map_or(u - Exp::one(), |l| (u - Exp::one()).max(l));
                return Ok(ZeroLambda { j0: j, exact_root });
            }
        }
    }
    Err(Error::Undecided { trunc: alpha.trunc().map(|t| t.to_string()).unwrap_or_else(|| "exact".into()) })
}

/// Checks that `|D_τ^Q| / |D_τ^P| = n/m` at every final π-root of `P` that is
/// also a π-root of `Q`. Requires `[P, Q]` to be a nonzero constant.
pub fn check_common_root_ratio(p: &LaurentPoly, q: &LaurentPoly, m: i64, n: i64, e: &Enumeration) -> Result<bool> {
    require_jacobian(p, q)?;
    for fr in &e.finals {
        let dq = f_lambda(q, &fr.base.prefix, fr.base.j0)?.count as i64;
        if dq > 0 && dq * m != fr.base.count as i64 * n {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Errors with [`Error::HypothesisNotMet`] unless `[P, Q]` is a nonzero constant.
pub fn require_jacobian(p: &LaurentPoly, q: &LaurentPoly) -> Result<()> {
    let b = p.bracket(q)?;
    let constant = b.len() == 1 && b.terms().all(|(e, _)| e.x.is_zero() && e.y == 0);
    if constant {
        Ok(())
    } else {
        Err(Error::HypothesisNotMet("[P, Q] is not a nonzero constant".into()))
    }
}

#[cfg(test)]
mod tests;
