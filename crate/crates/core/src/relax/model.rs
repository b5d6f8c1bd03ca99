//! Assembly of `max λ s.t. f - λ = g + Σ_k f^k` with one flow block per
//! (certificate, selector) pair, and its two solve modes.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::block::{emit_nonneg_block, BlockHooks, NonnegBlock};
use crate::error::{Error, Result};
use crate::extension::Selector;
use crate::lp::{LinExpr, LpModel, Sense, VarDomain, VarId};
use crate::mincut::minimize_nns;
use crate::poly::{Polynomial, SignedDecomposition, SignedSupport, Support};
use crate::rational::Rational;
use crate::solve::{
    solve_cutting_plane, solve_with, CutOracle, CutPlaneOptions, CutPlaneStats, LpSolution,
    SolveOptions,
};

/// Positive part of one certificate together with its extension set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsBlock {
    pub theta2: SignedSupport,
    pub selectors: Vec<Selector>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AssembleOptions {
    /// Add the non-negative remainder `g`.
    pub with_g: bool,
    /// When `f` has no negative nonlinear monomial, let each certificate use
    /// the other blocks' positive monomials with a non-positive sign.
    pub foreign_ps_as_nns: bool,
}

/// Coefficient expressions of one certificate polynomial `f^k`.
#[derive(Clone, Debug)]
pub struct CertificateBlockModel {
    pub theta2: SignedSupport,
    pub constant: LinExpr,
    pub linear: BTreeMap<u32, LinExpr>,
    /// Non-positive coefficients, each `-v` with `v >= 0`.
    pub negative: BTreeMap<Support, LinExpr>,
    /// Non-negative coefficients on `θ^{k,2}`.
    pub positive: BTreeMap<Support, LinExpr>,
    pub selectors: Vec<Selector>,
    /// Flow rows per selector; empty in the master model.
    pub flows: Vec<NonnegBlock>,
}

impl CertificateBlockModel {
    /// `L_j = f^k_j + Σ_{α: sel(α) = j} f^k_α`.
    pub fn linear_hooks(&self, sel: &Selector) -> BTreeMap<u32, LinExpr> {
        let mut l = self.linear.clone();
        let one = Rational::one();
        for (a, e) in &self.positive {
            let j = sel.get(a).expect("selector covers θ^{k,2}");
            l.get_mut(&j).expect("variable in range").add_expr(e, &one);
        }
        l
    }

    /// The certificate polynomial evaluated at an LP point.
    pub fn polynomial(&self, n: usize, values: &[Rational]) -> Polynomial {
        let mut p = Polynomial::zero(n);
        let mut put = |a: &Support, e: &LinExpr| {
            p.add_term(a.clone(), e.eval(values)).expect("support fits");
        };
        put(&Support::constant(), &self.constant);
        for (j, e) in &self.linear {
            put(&Support::var(*j), e);
        }
        for (a, e) in self.negative.iter().chain(&self.positive) {
            put(a, e);
        }
        p
    }

    /// The NNS overestimator `nn(f^k) + M·pp(f^k)` at an LP point.
    pub fn overestimator(&self, n: usize, sel: &Selector, values: &[Rational]) -> Polynomial {
        let mut p = Polynomial::zero(n);
        p.add_term(Support::constant(), self.constant.eval(values))
            .expect("fits");
        for (j, e) in self.linear_hooks(sel) {
            p.add_term(Support::var(j), e.eval(values)).expect("fits");
        }
        for (a, e) in &self.negative {
            p.add_term(a.clone(), e.eval(values)).expect("fits");
        }
        p
    }

    /// `F0 + Σ_α x^α F_α + Σ_j x_j L_j` as an expression in model variables.
    pub fn cut_at(&self, sel: &Selector, x: &[bool]) -> LinExpr {
        let one = Rational::one();
        let mut e = self.constant.clone();
        for (a, fa) in &self.negative {
            if a.eval(x) {
                e.add_expr(fa, &one);
            }
        }
        for (j, lj) in self.linear_hooks(sel) {
            if x[j as usize - 1] {
                e.add_expr(&lj, &one);
            }
        }
        e
    }
}

#[derive(Clone, Debug)]
pub struct RelaxationModel {
    pub f: Polynomial,
    pub decomposition: SignedDecomposition,
    /// Extended formulation with every flow block.
    pub model: LpModel,
    /// The same model without flow rows, for the cutting-plane mode.
    pub master: LpModel,
    pub lambda: VarId,
    pub g: BTreeMap<Support, VarId>,
    pub blocks: Vec<CertificateBlockModel>,
}

fn key(a: &Support) -> String {
    if a.is_constant() {
        "c".into()
    } else {
        a.key().replace(' ', "_")
    }
}

pub fn assemble(f: &Polynomial, ps_blocks: Vec<PsBlock>, opts: AssembleOptions) -> Result<RelaxationModel> {
    let n = f.n_vars();
    let dec = SignedDecomposition::ambient(f);
    let negs = dec.negative_monomials();
    let mut model = LpModel::new();
    let lambda = model.add_var("lambda", VarDomain::Free)?;

    let all: Vec<Support> = dec.s1.supports().chain(dec.s2.supports()).cloned().collect();
    let mut g = BTreeMap::new();
    if opts.with_g {
        for a in &all {
            g.insert(a.clone(), model.add_var(format!("g.{}", key(a)), VarDomain::NonNeg)?);
        }
    }

    let foreign = opts.foreign_ps_as_nns && negs.is_empty();
    let mut blocks = Vec::with_capacity(ps_blocks.len());
    for (k, pb) in ps_blocks.into_iter().enumerate() {
        for a in pb.theta2.supports() {
            if !dec.s2.contains(a) {
                return Err(Error::NotWithin(format!(
                    "block monomial {a} is not a positive monomial of f"
                )));
            }
        }
        let constant = LinExpr::var(model.add_var(format!("f{k}.c"), VarDomain::Free)?);
        let mut linear = BTreeMap::new();
        for j in 1..=n as u32 {
            let v = model.add_var(format!("f{k}.x{j}"), VarDomain::Free)?;
            linear.insert(j, LinExpr::var(v));
        }
        let mut negative = BTreeMap::new();
        let extra = dec
            .s2
            .supports()
            .filter(|a| foreign && !pb.theta2.contains(a))
            .cloned();
        for a in negs.iter().cloned().chain(extra) {
            let v = model.add_var(format!("f{k}.n.{}", key(&a)), VarDomain::NonNeg)?;
            negative.insert(a, LinExpr::term(v, -Rational::one()));
        }
        let mut positive = BTreeMap::new();
        for a in pb.theta2.supports() {
            let v = model.add_var(format!("f{k}.p.{}", key(a)), VarDomain::NonNeg)?;
            positive.insert(a.clone(), LinExpr::var(v));
        }
        blocks.push(CertificateBlockModel {
            theta2: pb.theta2,
            constant,
            linear,
            negative,
            positive,
            selectors: pb.selectors,
            flows: Vec::new(),
        });
    }

    // coefficient matching: g_α + Σ_k f^k_α + λ·[α = ∅] = f_α
    for a in &all {
        let mut e = LinExpr::zero();
        if a.is_constant() {
            e.add_term(lambda, Rational::one());
        }
        if let Some(v) = g.get(a) {
            e.add_term(*v, Rational::one());
        }
        for b in &blocks {
            let coeff = if a.is_constant() {
                Some(&b.constant)
            } else if a.degree() == 1 {
                b.linear.get(&a.indices()[0])
            } else {
                b.negative.get(a).or_else(|| b.positive.get(a))
            };
            if let Some(c) = coeff {
                e.add_expr(c, &Rational::one());
            }
        }
        model.add_row(format!("match.{}", key(a)), &e, Sense::Eq, f.coeff(a))?;
    }
    model.set_objective(&LinExpr::var(lambda));
    let master = model.clone();

    for (k, b) in blocks.iter_mut().enumerate() {
        for (q, sel) in b.selectors.iter().enumerate() {
            let linear = b.linear_hooks(sel);
            let hooks = BlockHooks {
                negative: &b.negative,
                linear: &linear,
                constant: &b.constant,
            };
            let nb = emit_nonneg_block(&mut model, &format!("k{k}m{q}"), &hooks, true)?;
            b.flows.push(nb);
        }
    }

    Ok(RelaxationModel {
        f: f.clone(),
        decomposition: dec,
        model,
        master,
        lambda,
        g,
        blocks,
    })
}

/// Separation over every (certificate, selector) pair by min cut.
struct FlowCutOracle<'a> {
    rm: &'a RelaxationModel,
    /// Cuts must be violated by more than this (zero in exact mode).
    tolerance: Rational,
}

impl CutOracle for FlowCutOracle<'_> {
    fn separate(&mut self, _model: &LpModel, values: &[Rational]) -> Result<Vec<LinExpr>> {
        let n = self.rm.f.n_vars();
        let mut cuts = Vec::new();
        for b in &self.rm.blocks {
            for sel in &b.selectors {
                let h = b.overestimator(n, sel, values);
                let (x, v) = minimize_nns(&h)?;
                if v < -self.tolerance.clone() {
                    cuts.push(b.cut_at(sel, &x));
                }
            }
        }
        Ok(cuts)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SolveMode {
    #[default]
    Extended,
    CuttingPlane,
}

#[derive(Clone, Debug)]
pub struct RelaxationSolution {
    pub lambda: Rational,
    pub solution: LpSolution,
    /// Rows and columns of the model that produced the bound.
    pub rows: usize,
    pub cols: usize,
    pub cut_stats: Option<CutPlaneStats>,
}

impl RelaxationModel {
    pub fn num_rows(&self) -> usize {
        self.model.num_rows()
    }

    pub fn num_cols(&self) -> usize {
        self.model.num_vars()
    }

    pub fn solve(&self, mode: SolveMode, opts: &SolveOptions) -> Result<RelaxationSolution> {
        match mode {
            SolveMode::Extended => {
                let sol = solve_with(&self.model, opts)?;
                self.finish(sol, self.model.num_rows(), self.model.num_vars(), None)
            }
            SolveMode::CuttingPlane => {
                let mut master = self.master.clone();
                // h(0) >= 0 for every certificate keeps the master bounded
                for (k, b) in self.blocks.iter().enumerate() {
                    master.add_row(format!("k{k}.origin"), &b.constant, Sense::Ge, Rational::zero())?;
                }
                let tolerance = match opts.arithmetic {
                    crate::solve::Arithmetic::Exact => Rational::zero(),
                    crate::solve::Arithmetic::Float => {
                        crate::rational::from_f64(crate::solve::FLOAT_TOL)
                    }
                };
                let mut oracle = FlowCutOracle { rm: self, tolerance };
                let cp = CutPlaneOptions {
                    solve: *opts,
                    max_rounds: 10 * self.model.num_rows().max(1),
                };
                let (sol, final_master, stats) = solve_cutting_plane(master, &mut oracle, &cp)?;
                self.finish(sol, final_master.num_rows(), final_master.num_vars(), Some(stats))
            }
        }
    }

    fn finish(
        &self,
        sol: LpSolution,
        rows: usize,
        cols: usize,
        cut_stats: Option<CutPlaneStats>,
    ) -> Result<RelaxationSolution> {
        match sol.status {
            crate::solve::Status::Optimal => Ok(RelaxationSolution {
                lambda: sol.values[self.lambda.0].clone(),
                solution: sol,
                rows,
                cols,
                cut_stats,
            }),
            crate::solve::Status::Infeasible => Err(Error::Unsolved("infeasible")),
            crate::solve::Status::Unbounded => Err(Error::Unsolved("unbounded")),
        }
    }

    /// `θ^k`: free constant and linear entries, the negative monomials, and
    /// the block's positive monomials.
    pub fn theta(&self, k: usize) -> SignedSupport {
        let b = &self.blocks[k];
        let n = self.f.n_vars();
        let mut s = SignedSupport::new(n);
        let pos = crate::poly::Sign::Pos;
        let neg = crate::poly::Sign::Neg;
        s.insert(Support::constant(), pos).expect("fits");
        for j in 1..=n as u32 {
            s.insert(Support::var(j), pos).expect("fits");
        }
        for a in b.negative.keys() {
            s.insert(a.clone(), neg).expect("fits");
        }
        for a in b.positive.keys() {
            s.insert(a.clone(), pos).expect("fits");
        }
        s
    }

    pub fn g_polynomial(&self, values: &[Rational]) -> Polynomial {
        Polynomial::from_terms(
            self.f.n_vars(),
            self.g.iter().map(|(a, v)| (a.clone(), values[v.0].clone())),
        )
        .expect("supports fit")
    }
}
