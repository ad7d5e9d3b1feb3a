use std::cell::OnceCell;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{fp, QPoly};
use crate::modular::{add_mod, int_mod, inv_mod, mul_mod, small_primes_from, sub_mod};
use crate::numfield::{
    achievable, compositum, factor_over_k, roots_in, FieldRef, NFElt, NFPoly, NumberField,
};

/// First prime used for reductions of the tower.
pub(crate) const FIRST_PRIME: u64 = 1009;
/// Factorization patterns consulted before falling back to exact factoring.
const PATTERN_LIMIT: usize = 24;
/// Rational primes examined while looking for degree-one primes of K_j.
const PATTERN_SEARCH: usize = 600;

/// How the j-th adjoined root x_j is tied to K_j = K(x_0, …, x_{j−1}).
#[derive(Clone, Debug)]
pub(crate) enum Relation {
    /// x_j is a root of f divided by the first `known` roots, a quotient
    /// proven irreducible over K_j.
    Residual { known: usize },
    /// x_j is a root of this irreducible factor over the primitive field of K_j.
    Factor(NFPoly),
}

/// A root of f inside the tower.
#[derive(Clone, Debug)]
pub enum RootExpr {
    /// The j-th adjoined root.
    Adjoined(usize),
    /// An element of the primitive field of K_j.
    InField(usize, NFElt),
    /// Minus the subleading coefficient of f, minus all other roots.
    Complement,
    /// One of the last two roots r, r′ when disc(f) has a square root V in
    /// K: r − r′ = V / W, where W is the Vandermonde product of the other
    /// roots times ∏ (r_i − r)(r_i − r′). `true` marks r.
    LastPair(bool),
}

/// K_j = Q(θ_j) with θ_j = Σ theta[m]·x_m + theta_base·η.
#[derive(Clone, Debug)]
struct PrimField {
    field: FieldRef,
    theta: Vec<BigInt>,
    theta_base: BigInt,
    /// Image of the previous field's generator.
    prev_gen: Option<NFElt>,
    x_images: Vec<NFElt>,
    base_gen: NFElt,
}

/// The splitting field of f over K as a tower K = K_0 ⊂ K_1 ⊂ … ⊂ K_t = L,
/// each step adjoining one root of f.
///
/// Single primitive elements are only built for the steps where a residual
/// factor must be factored exactly; the group itself is read off from the
/// homomorphisms L → F_p at primes where f splits.
#[derive(Clone, Debug)]
pub struct SplittingFieldData {
    pub base: FieldRef,
    /// The squarefree, monic polynomial that was split, over K.
    pub poly: NFPoly,
    /// All roots of `poly`, in construction order.
    pub roots: Vec<RootExpr>,
    relations: Vec<Relation>,
    degree: u64,
    fields: Vec<PrimField>,
    sqrt_disc: Option<NFElt>,
}

/// L = Q(θ) with every root written in the power basis of θ.
#[derive(Clone, Debug)]
pub struct PrimitiveForm {
    pub field: FieldRef,
    pub base: FieldRef,
    /// Same order as [`SplittingFieldData::roots`].
    pub roots: Vec<NFElt>,
    /// Image of K's generator in L.
    pub base_gen: NFElt,
    /// θ = Σ theta_root_coeffs[j]·roots[j] + theta_base_coeff·base_gen.
    pub theta_root_coeffs: Vec<BigInt>,
    pub theta_base_coeff: BigInt,
}

impl PrimitiveForm {
    /// [L:K]
    pub fn degree_over_base(&self) -> u64 {
        (self.field.degree() / self.base.degree()) as u64
    }

    /// θ rebuilt from its recorded expression; equals L's generator.
    pub fn theta_from_roots(&self) -> NFElt {
        let mut acc = self.base_gen.scale(&self.theta_base_coeff.clone().into());
        for (c, r) in self.theta_root_coeffs.iter().zip(&self.roots) {
            acc = acc.add(&r.scale(&c.clone().into()));
        }
        acc
    }
}

fn product_of_linears(field: &FieldRef, roots: &[NFElt]) -> NFPoly {
    roots
        .iter()
        .fold(NFPoly::one(field), |acc, r| acc.mul(&NFPoly::linear(r)))
}

impl SplittingFieldData {
    fn start(base: &FieldRef, poly: NFPoly) -> Self {
        let f0 = PrimField {
            field: base.clone(),
            theta: vec![],
            theta_base: BigInt::one(),
            prev_gen: None,
            x_images: vec![],
            base_gen: NFElt::generator(base),
        };
        SplittingFieldData {
            base: base.clone(),
            poly,
            roots: vec![],
            relations: vec![],
            degree: 1,
            fields: vec![f0],
            sqrt_disc: None,
        }
    }

    /// [L:K]
    pub fn degree_over_base(&self) -> u64 {
        self.degree
    }

    /// Relative degrees [K_{j+1}:K_j] of the tower steps.
    pub fn step_degrees(&self) -> Vec<usize> {
        self.relations
            .iter()
            .map(|r| match r {
                Relation::Residual { known } => self.poly.deg() - known,
                Relation::Factor(h) => h.deg(),
            })
            .collect()
    }

    pub(crate) fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Builds the primitive fields of K_1, …, K_upto.
    fn extend_fields(&mut self, upto: usize) -> Result<()> {
        while self.fields.len() <= upto {
            let j = self.fields.len() - 1;
            let h = match &self.relations[j] {
                Relation::Residual { known } => self.residual_in_field(j, *known),
                Relation::Factor(h) => h.clone(),
            };
            let prev = &self.fields[j];
            let c = compositum(&prev.field, &h)?;
            let k = BigInt::from(c.k);
            let mut x_images: Vec<NFElt> = prev.x_images.iter().map(|x| x.embed(&c.r1)).collect();
            x_images.push(c.r2);
            // γ = d·β + k·θ
            let mut theta: Vec<BigInt> = prev.theta.iter().map(|t| t * &k).collect();
            theta.push(c.d.clone());
            let next = PrimField {
                base_gen: prev.base_gen.embed(&c.r1),
                theta_base: &prev.theta_base * &k,
                theta,
                x_images,
                prev_gen: Some(c.r1),
                field: c.field,
            };
            self.fields.push(next);
        }
        Ok(())
    }

    /// Root `idx` as an element of the primitive field of K_j.
    fn root_in_field(&self, j: usize, idx: usize) -> NFElt {
        let fj = &self.fields[j];
        match &self.roots[idx] {
            RootExpr::Adjoined(m) => fj.x_images[*m].clone(),
            RootExpr::InField(i, e) => {
                let mut e = e.clone();
                for t in i + 1..=j {
                    e = e.embed(self.fields[t].prev_gen.as_ref().unwrap());
                }
                e
            }
            RootExpr::Complement => {
                let n = self.poly.deg();
                let mut acc = self.poly.coeff(n - 1).embed(&fj.base_gen).neg();
                for other in 0..self.roots.len() {
                    if other != idx {
                        acc = acc.sub(&self.root_in_field(j, other));
                    }
                }
                acc
            }
            RootExpr::LastPair(plus) => {
                let n = self.poly.deg();
                let others: Vec<NFElt> = (0..n - 2).map(|i| self.root_in_field(j, i)).collect();
                let g = self.residual_in_field(j, n - 2);
                let mut w = NFElt::one(&fj.field);
                for (a, ra) in others.iter().enumerate() {
                    for rb in &others[a + 1..] {
                        w = w.mul(&ra.sub(rb));
                    }
                    w = w.mul(&g.eval(ra));
                }
                let v = self.sqrt_disc.as_ref().expect("square root of disc(f)");
                let delta = v.embed(&fj.base_gen).div(&w).expect("W is nonzero");
                let sum = g.coeff(1).neg();
                let half = crate::exact::ratio(1, 2);
                if *plus {
                    sum.add(&delta).scale(&half)
                } else {
                    sum.sub(&delta).scale(&half)
                }
            }
        }
    }

    /// f divided by its first `known` roots, over the primitive field of K_j.
    fn residual_in_field(&self, j: usize, known: usize) -> NFPoly {
        let fj = &self.fields[j];
        let f = self.poly.embed(&fj.base_gen);
        let lin: Vec<NFElt> = (0..known).map(|i| self.root_in_field(j, i)).collect();
        let (q, r) = f
            .divrem(&product_of_linears(&fj.field, &lin))
            .expect("monic divisor");
        debug_assert!(r.is_zero());
        q
    }

    /// Whether the current residual is irreducible over K_j, decided from its
    /// factorization patterns at degree-one primes of K_j. `false` means
    /// only that no proof was found.
    fn residual_is_irreducible(&self) -> bool {
        let j = self.relations.len();
        let known = self.roots.len();
        let e = self.poly.deg() - known;
        let mut possible: BTreeSet<usize> = (0..=e).collect();
        let mut used = 0;
        for p in small_primes_from(FIRST_PRIME).take(PATTERN_SEARCH) {
            let Some(red) = Reduced::new(self, p) else {
                continue;
            };
            let etas = red.eta_values(known);
            // points above one p see conjugate Frobenius elements, so further
            // points there add no independent patterns
            let Some(points) = red.points(j, 1, &etas) else {
                continue;
            };
            if let Some(pt) = points.first() {
                let Some(g) = red.residual_at(known, pt) else {
                    continue;
                };
                let degs = fp::factor_degrees(&g, p);
                possible = possible
                    .intersection(&achievable(&degs, e))
                    .copied()
                    .collect();
                used += 1;
                if possible.len() <= 2 {
                    return true;
                }
                if used >= PATTERN_LIMIT {
                    return false;
                }
            }
        }
        false
    }

    /// Looks for a square root of disc(f) in K.
    fn set_sqrt_disc(&mut self) -> Result<bool> {
        let d = self.poly.discriminant()?;
        let k = &self.base;
        let x2 = NFPoly::new(k, vec![d.neg(), NFElt::zero(k), NFElt::one(k)]);
        self.sqrt_disc = roots_in(k, &x2)?.into_iter().next();
        Ok(self.sqrt_disc.is_some())
    }

    /// Writes L as a single primitive extension, building every field of the
    /// tower. Cost grows quickly with [L:Q].
    pub fn primitive_form(&self) -> Result<PrimitiveForm> {
        let mut t = self.clone();
        let top = t.relations.len();
        t.extend_fields(top)?;
        let ft = &t.fields[top];
        let roots: Vec<NFElt> = (0..t.roots.len())
            .map(|i| t.root_in_field(top, i))
            .collect();
        let theta_root_coeffs = t
            .roots
            .iter()
            .map(|r| match r {
                RootExpr::Adjoined(m) => ft.theta[*m].clone(),
                _ => BigInt::zero(),
            })
            .collect();
        Ok(PrimitiveForm {
            field: ft.field.clone(),
            base: t.base.clone(),
            roots,
            base_gen: ft.base_gen.clone(),
            theta_root_coeffs,
            theta_base_coeff: ft.theta_base.clone(),
        })
    }
}

/// A homomorphism from K_j into F_p: the image of K's generator, f at that
/// image, and the images of x_0, …, x_{j−1}.
#[derive(Clone, Debug)]
pub(crate) struct Point {
    pub(crate) eta: u64,
    pub(crate) f: Vec<u64>,
    pub(crate) xs: Vec<u64>,
}

/// The tower reduced modulo p. Field data is reduced on first use.
pub(crate) struct Reduced<'a> {
    s: &'a SplittingFieldData,
    pub(crate) p: u64,
    mu: Vec<u64>,
    f: Vec<Vec<u64>>,
    thetas: Vec<(Vec<u64>, u64)>,
    factors: Vec<OnceCell<Option<Vec<Vec<u64>>>>>,
    in_field: Vec<OnceCell<Option<Vec<u64>>>>,
    sqrt_disc: Option<Vec<u64>>,
}

impl<'a> Reduced<'a> {
    /// `None` when p divides a denominator of f or μ_K is not squarefree mod p.
    pub(crate) fn new(s: &'a SplittingFieldData, p: u64) -> Option<Self> {
        let mu = s.base.mu_mod(p);
        if !fp::is_squarefree(&mu, p) {
            return None;
        }
        let f = s
            .poly
            .coeffs()
            .iter()
            .map(|c| c.reduce_mod(p))
            .collect::<Option<Vec<_>>>()?;
        let thetas = s
            .fields
            .iter()
            .map(|fj| {
                (
                    fj.theta.iter().map(|t| int_mod(t, p)).collect(),
                    int_mod(&fj.theta_base, p),
                )
            })
            .collect();
        let sqrt_disc = match &s.sqrt_disc {
            Some(v) => Some(v.reduce_mod(p)?),
            None => None,
        };
        Some(Reduced {
            sqrt_disc,
            s,
            p,
            mu,
            f,
            thetas,
            factors: (0..s.relations.len()).map(|_| OnceCell::new()).collect(),
            in_field: (0..s.roots.len()).map(|_| OnceCell::new()).collect(),
        })
    }

    /// Images t of η with f(t) squarefree of full degree and with at least
    /// `min_roots` roots in F_p, paired with f(t).
    pub(crate) fn eta_values(&self, min_roots: usize) -> Vec<(u64, Vec<u64>)> {
        let p = self.p;
        let n = self.s.poly.deg();
        fp::roots(&self.mu, p)
            .into_iter()
            .filter_map(|t| {
                let g: Vec<u64> = fp::trim(self.f.iter().map(|c| fp::eval(c, t, p)).collect());
                let ok = fp::deg(&g) == n
                    && fp::is_squarefree(&g, p)
                    && (min_roots == 0 || fp::roots(&g, p).len() >= min_roots);
                ok.then_some((t, g))
            })
            .collect()
    }

    fn theta_at(&self, j: usize, eta: u64, xs: &[u64]) -> u64 {
        let p = self.p;
        let (coeffs, base) = &self.thetas[j];
        coeffs
            .iter()
            .zip(xs)
            .fold(mul_mod(*base, eta, p), |acc, (&c, &x)| {
                add_mod(acc, mul_mod(c, x, p), p)
            })
    }

    fn factor_coeffs(&self, l: usize) -> Option<&Vec<Vec<u64>>> {
        self.factors[l]
            .get_or_init(|| match &self.s.relations[l] {
                Relation::Factor(h) => h.coeffs().iter().map(|c| c.reduce_mod(self.p)).collect(),
                Relation::Residual { .. } => Some(vec![]),
            })
            .as_ref()
    }

    /// Value of root `idx` at a point; `None` for the complement root or a
    /// bad prime.
    fn root_value(&self, idx: usize, pt: &Point) -> Option<u64> {
        match &self.s.roots[idx] {
            RootExpr::Adjoined(m) => pt.xs.get(*m).copied(),
            RootExpr::InField(j, e) => {
                let v = self.in_field[idx]
                    .get_or_init(|| e.reduce_mod(self.p))
                    .as_ref()?;
                Some(fp::eval(v, self.theta_at(*j, pt.eta, &pt.xs), self.p))
            }
            RootExpr::Complement | RootExpr::LastPair(_) => None,
        }
    }

    /// f at the point divided by its first `known` roots; `None` if a
    /// division leaves a remainder, which only happens at bad primes.
    pub(crate) fn residual_at(&self, known: usize, pt: &Point) -> Option<Vec<u64>> {
        let p = self.p;
        let mut g = pt.f.clone();
        for i in 0..known {
            let r = self.root_value(i, pt)?;
            // synthetic division by X − r
            let mut q = vec![0u64; g.len() - 1];
            let mut carry = 0u64;
            for k in (0..g.len()).rev() {
                let c = add_mod(g[k], mul_mod(carry, r, p), p);
                if k == 0 {
                    if c != 0 {
                        return None;
                    }
                } else {
                    q[k - 1] = c;
                    carry = c;
                }
            }
            g = q;
        }
        Some(g)
    }

    /// Polynomial over F_p whose roots are the admissible images of x_l.
    fn relation_at(&self, l: usize, pt: &Point) -> Option<Vec<u64>> {
        match &self.s.relations[l] {
            Relation::Residual { known } => self.residual_at(*known, pt),
            Relation::Factor(_) => {
                let t = self.theta_at(l, pt.eta, &pt.xs);
                let coeffs = self.factor_coeffs(l)?;
                Some(fp::trim(
                    coeffs.iter().map(|c| fp::eval(c, t, self.p)).collect(),
                ))
            }
        }
    }

    /// Up to `limit` homomorphisms K_depth → F_p extending the given images
    /// of η, in lexicographic order. `None` at bad primes.
    pub(crate) fn points(
        &self,
        depth: usize,
        limit: usize,
        etas: &[(u64, Vec<u64>)],
    ) -> Option<Vec<Point>> {
        let mut out = Vec::new();
        for (eta, f) in etas {
            let mut pt = Point {
                eta: *eta,
                f: f.clone(),
                xs: vec![],
            };
            self.extend_point(depth, limit, &mut pt, &mut out)?;
            if out.len() >= limit {
                break;
            }
        }
        Some(out)
    }

    fn extend_point(
        &self,
        depth: usize,
        limit: usize,
        pt: &mut Point,
        out: &mut Vec<Point>,
    ) -> Option<()> {
        let l = pt.xs.len();
        if l == depth {
            out.push(pt.clone());
            return Some(());
        }
        let h = self.relation_at(l, pt)?;
        for y in fp::roots(&h, self.p) {
            pt.xs.push(y);
            let r = self.extend_point(depth, limit, pt, out);
            pt.xs.pop();
            r?;
            if out.len() >= limit {
                break;
            }
        }
        Some(())
    }

    /// Images of the last two roots given the images of all the others.
    fn last_pair_at(&self, pt: &Point, others: &[u64]) -> Option<(u64, u64)> {
        let p = self.p;
        let g = self.residual_at(others.len(), pt)?;
        let mut w = 1u64;
        for (a, &ra) in others.iter().enumerate() {
            for &rb in &others[a + 1..] {
                w = mul_mod(w, sub_mod(ra, rb, p), p);
            }
            w = mul_mod(w, fp::eval(&g, ra, p), p);
        }
        if w == 0 {
            return None;
        }
        let v = fp::eval(self.sqrt_disc.as_ref()?, pt.eta, p);
        let delta = mul_mod(v, inv_mod(w, p), p);
        let sum = sub_mod(0, g[1], p);
        let half = inv_mod(2, p);
        Some((
            mul_mod(add_mod(sum, delta, p), half, p),
            mul_mod(sub_mod(sum, delta, p), half, p),
        ))
    }

    /// Images of all roots at a full point.
    pub(crate) fn all_roots_at(&self, pt: &Point) -> Option<Vec<u64>> {
        let p = self.p;
        let n = self.s.poly.deg();
        let mut vals = Vec::with_capacity(n);
        let mut complement = None;
        for i in 0..self.s.roots.len() {
            match self.s.roots[i] {
                RootExpr::Complement => {
                    complement = Some(i);
                    vals.push(0);
                }
                RootExpr::LastPair(_) => {
                    let (r, r2) = self.last_pair_at(pt, &vals)?;
                    vals.push(r);
                    vals.push(r2);
                    break;
                }
                _ => vals.push(self.root_value(i, pt)?),
            }
        }
        if let Some(i) = complement {
            let mut acc = sub_mod(0, pt.f[n - 1], p);
            for (k, v) in vals.iter().enumerate() {
                if k != i {
                    acc = sub_mod(acc, *v, p);
                }
            }
            vals[i] = acc;
        }
        Some(vals)
    }
}

/// The splitting field of f over K. Roots are adjoined one at a time; the
/// construction stops with `BudgetExceeded` as soon as the degree over K
/// would pass `budget`.
pub fn splitting_field(base: &FieldRef, f: &NFPoly, budget: u64) -> Result<SplittingFieldData> {
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be at least 1".into()));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.deg() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let poly = f.squarefree_part()?.monic()?;
    let n = poly.deg();
    let mut s = SplittingFieldData::start(base, poly);
    loop {
        let known = s.roots.len();
        let e = n - known;
        if e == 0 {
            break;
        }
        if e == 1 {
            s.roots.push(RootExpr::Complement);
            break;
        }
        let j = s.relations.len();
        let (relation, step) = if s.residual_is_irreducible() {
            (Relation::Residual { known }, e)
        } else if e == 2 && s.set_sqrt_disc()? {
            s.roots.push(RootExpr::LastPair(true));
            s.roots.push(RootExpr::LastPair(false));
            break;
        } else {
            s.extend_fields(j)?;
            let g = s.residual_in_field(j, known);
            let mut nonlinear = None;
            for h in factor_over_k(&s.fields[j].field, &g)? {
                if h.deg() == 1 {
                    s.roots.push(RootExpr::InField(j, h.coeff(0).neg()));
                } else if nonlinear.is_none() {
                    nonlinear = Some(h);
                }
            }
            match nonlinear {
                None => continue,
                Some(h) => {
                    let d = h.deg();
                    (Relation::Factor(h), d)
                }
            }
        };
        let reached = s.degree * step as u64;
        if reached > budget {
            return Err(Error::BudgetExceeded { budget, reached });
        }
        s.degree = reached;
        s.relations.push(relation);
        s.roots.push(RootExpr::Adjoined(j));
    }
    Ok(s)
}

/// The splitting field of a rational polynomial over Q.
pub fn splitting_field_over_q(f: &QPoly, budget: u64) -> Result<SplittingFieldData> {
    let q = NumberField::rationals();
    splitting_field(&q, &NFPoly::from_qpoly(&q, f), budget)
}
