//! Buchberger's algorithm for submodules of K[x,y]^r.
//!
//! Ideals are the rank-one case. Module elements are compared
//! term-over-position (lower index wins ties), optionally with the first
//! block of positions eliminated, which is what the syzygy computation
//! needs. Pairs are pruned with the Gebauer–Möller update; the coprime
//! criterion is only applied in rank one, where it is valid.

use std::fmt;

use crate::poly::{Monomial, MonomialOrder, Polynomial};
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("no generators given")]
    EmptyInput,
    #[error("module vectors of different ranks")]
    RankMismatch,
    #[error("generators over different fields")]
    FieldMismatch,
}

/// An element of K[x,y]^r.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleVector {
    pub components: Vec<Polynomial>,
}

impl ModuleVector {
    pub fn new(components: Vec<Polynomial>) -> Self {
        ModuleVector { components }
    }

    pub fn scalar(p: Polynomial) -> Self {
        ModuleVector { components: vec![p] }
    }

    pub fn zero(rank: usize, field: &Field) -> Self {
        ModuleVector {
            components: vec![Polynomial::zero(field); rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn field(&self) -> Result<Field, GroebnerError> {
        let mut field = Field::rationals();
        for c in &self.components {
            field = field.join(c.field()).map_err(|_| GroebnerError::FieldMismatch)?;
        }
        Ok(field)
    }

    /// `Σ coeffs[i]·vectors[i]`.
    pub fn combine(coeffs: &[Polynomial], vectors: &[ModuleVector], rank: usize, field: &Field) -> ModuleVector {
        let mut acc = ModuleVector::zero(rank, field);
        for (c, v) in coeffs.iter().zip(vectors) {
            if c.is_zero() {
                continue;
            }
            for (a, b) in acc.components.iter_mut().zip(&v.components) {
                *a = &*a + &(c * b);
            }
        }
        acc
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// How positions enter the comparison of module terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PositionRule {
    /// Compare monomials first; on a tie the lower position index is larger.
    TermOverPosition,
    /// Any term in positions `< n` beats every term in positions `≥ n`;
    /// term-over-position inside each block.
    EliminateFirst(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModuleOrder {
    pub base: MonomialOrder,
    pub position_rule: PositionRule,
}

impl ModuleOrder {
    pub fn term_over_position(base: MonomialOrder) -> Self {
        ModuleOrder {
            base,
            position_rule: PositionRule::TermOverPosition,
        }
    }

    /// Packed sort key; larger means larger in the order.
    pub fn key(&self, pos: usize, m: Monomial) -> u128 {
        let block = match self.position_rule {
            PositionRule::TermOverPosition => 0u128,
            PositionRule::EliminateFirst(n) => u128::from(pos < n),
        };
        let wdeg = u128::from(m.weighted_degree(self.base.weights));
        let y = u128::from(u32::MAX - m.y);
        let p = u128::from(u32::MAX - u32::try_from(pos).expect("position index overflow"));
        (block << 96) | (wdeg << 64) | (y << 32) | p
    }
}

impl Default for ModuleOrder {
    fn default() -> Self {
        ModuleOrder::term_over_position(MonomialOrder::default())
    }
}

#[derive(Debug, Clone)]
struct Term {
    key: u128,
    pos: usize,
    mon: Monomial,
    coeff: Scalar,
}

/// Sorted sparse module vector, ascending in the module order so that the
/// leading term is the last one.
#[derive(Debug, Clone, Default)]
struct SVec(Vec<Term>);

impl SVec {
    fn from_vector(v: &ModuleVector, order: &ModuleOrder) -> SVec {
        let mut terms: Vec<Term> = v
            .components
            .iter()
            .enumerate()
            .flat_map(|(pos, p)| {
                p.terms().map(move |(mon, c)| Term {
                    key: order.key(pos, mon),
                    pos,
                    mon,
                    coeff: c.clone(),
                })
            })
            .collect();
        terms.sort_by_key(|t| t.key);
        SVec(terms)
    }

    fn to_vector(&self, rank: usize, field: &Field) -> ModuleVector {
        let mut comps = vec![Polynomial::zero(field); rank];
        for t in &self.0 {
            comps[t.pos].add_term(t.mon, t.coeff.clone());
        }
        ModuleVector { components: comps }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn lead(&self) -> Option<&Term> {
        self.0.last()
    }

    fn scale(&mut self, c: &Scalar) {
        for t in &mut self.0 {
            t.coeff = &t.coeff * c;
        }
    }

    /// `self − c·m·other`.
    fn sub_mul(&self, c: &Scalar, m: Monomial, other: &SVec, order: &ModuleOrder) -> SVec {
        let shifted = other.0.iter().map(|t| {
            let mon = t.mon * m;
            Term {
                key: order.key(t.pos, mon),
                pos: t.pos,
                mon,
                coeff: -(&t.coeff * c),
            }
        });
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let mut a = self.0.iter().peekable();
        let mut b = shifted.peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(ta), Some(tb)) => {
                    if ta.key < tb.key {
                        out.push(a.next().unwrap().clone());
                    } else if tb.key < ta.key {
                        out.push(b.next().unwrap());
                    } else {
                        let ta = a.next().unwrap();
                        let tb = b.next().unwrap();
                        let s = &ta.coeff + &tb.coeff;
                        if !s.is_zero() {
                            out.push(Term { coeff: s, ..tb });
                        }
                    }
                }
            }
        }
        SVec(out)
    }

    fn make_monic(&mut self) -> Scalar {
        let inv = self
            .lead()
            .expect("nonzero vector")
            .coeff
            .inverse()
            .expect("nonzero leading coefficient");
        self.scale(&inv);
        inv
    }
}

/// Cofactors of a basis element with respect to the input generators.
type Transform = Vec<Polynomial>;

fn transform_sub_mul(t: &mut Transform, c: &Scalar, m: Monomial, other: &Transform) {
    for (a, b) in t.iter_mut().zip(other) {
        if !b.is_zero() {
            *a = &*a - &b.mul_term(m, c);
        }
    }
}

fn transform_scale(t: &mut Transform, c: &Scalar) {
    for a in t.iter_mut() {
        *a = a.scale(c);
    }
}

/// Full reduction of `p` against `basis` (monic leading coefficients).
/// Returns the remainder; `cofactors[i]` accumulates the multiplier used for
/// `basis[i]` when given.
fn reduce(
    mut p: SVec,
    basis: &[&SVec],
    order: &ModuleOrder,
    mut cofactors: Option<&mut Vec<Polynomial>>,
) -> SVec {
    let mut remainder: Vec<Term> = Vec::new();
    while let Some(lt) = p.0.last() {
        let hit = basis.iter().enumerate().find(|(_, b)| {
            let bl = b.lead().expect("basis elements are nonzero");
            bl.pos == lt.pos && bl.mon.divides(lt.mon)
        });
        match hit {
            Some((i, b)) => {
                let m = b.lead().unwrap().mon.quotient(lt.mon);
                let c = lt.coeff.clone();
                if let Some(cf) = cofactors.as_deref_mut() {
                    cf[i].add_term(m, c.clone());
                }
                p = p.sub_mul(&c, m, b, order);
            }
            None => remainder.push(p.0.pop().unwrap()),
        }
    }
    remainder.reverse();
    SVec(remainder)
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    pos: usize,
    lcm: Monomial,
    key: u128,
}

/// A Gröbner basis of a submodule of K[x,y]^r. Immutable once built.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    generators: Vec<ModuleVector>,
    order: ModuleOrder,
    rank: usize,
    field: Field,
    elems: Vec<SVec>,
    /// `generators[k] = Σ_j transform[k][j]·input[j]`, when tracked.
    transform: Option<Vec<Transform>>,
    input_count: usize,
}

struct Engine<'a> {
    order: &'a ModuleOrder,
    ideal: bool,
    elems: Vec<SVec>,
    transforms: Option<Vec<Transform>>,
    basis: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Engine<'_> {
    fn lead(&self, i: usize) -> (usize, Monomial) {
        let t = self.elems[i].lead().expect("nonzero element");
        (t.pos, t.mon)
    }

    fn reduce_against_basis(&self, v: SVec, t: Option<Transform>) -> (SVec, Option<Transform>) {
        let refs: Vec<&SVec> = self.basis.iter().map(|&i| &self.elems[i]).collect();
        match t {
            None => (reduce(v, &refs, self.order, None), None),
            Some(mut t) => {
                let mut cof = vec![Polynomial::zero(&t[0].field().clone()); refs.len()];
                let r = reduce(v, &refs, self.order, Some(&mut cof));
                let ts = self.transforms.as_ref().unwrap();
                for (k, &bi) in self.basis.iter().enumerate() {
                    if cof[k].is_zero() {
                        continue;
                    }
                    for (a, b) in t.iter_mut().zip(&ts[bi]) {
                        *a = &*a - &(&cof[k] * b);
                    }
                }
                (r, Some(t))
            }
        }
    }

    fn insert(&mut self, mut v: SVec, mut t: Option<Transform>) {
        let inv = v.make_monic();
        if let Some(t) = t.as_mut() {
            transform_scale(t, &inv);
        }
        let h = self.elems.len();
        self.elems.push(v);
        if let Some(ts) = self.transforms.as_mut() {
            ts.push(t.expect("transform tracked"));
        }
        self.update(h);
    }

    /// Gebauer–Möller update of the basis and the pair set with element `h`.
    fn update(&mut self, h: usize) {
        let (hpos, hlt) = self.lead(h);
        let mut candidates: Vec<(usize, Monomial, bool)> = self
            .basis
            .iter()
            .filter_map(|&g| {
                let (gpos, glt) = self.lead(g);
                (gpos == hpos).then(|| (g, hlt.lcm(glt), self.ideal && hlt.is_coprime(glt)))
            })
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        while !candidates.is_empty() {
            let (g1, l1, coprime) = candidates.remove(0);
            let dominated = candidates
                .iter()
                .chain(kept.iter())
                .any(|(_, l2, _)| l2.divides(l1));
            if coprime || !dominated {
                kept.push((g1, l1, coprime));
            }
        }
        let order = *self.order;
        self.pairs.retain(|p| {
            if p.pos != hpos || !hlt.divides(p.lcm) {
                return true;
            }
            let li = hlt.lcm(self.elems[p.i].lead().unwrap().mon);
            let lj = hlt.lcm(self.elems[p.j].lead().unwrap().mon);
            li == p.lcm || lj == p.lcm
        });
        for (g, lcm, coprime) in kept {
            if !coprime {
                self.pairs.push(Pair {
                    i: g.min(h),
                    j: g.max(h),
                    pos: hpos,
                    lcm,
                    key: order.key(hpos, lcm),
                });
            }
        }
        let elems = &self.elems;
        self.basis.retain(|&g| {
            let t = elems[g].lead().unwrap();
            !(t.pos == hpos && hlt.divides(t.mon))
        });
        self.basis.push(h);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let idx = self
            .pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| (p.key, p.i, p.j))
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(idx))
    }

    fn s_vector(&self, p: &Pair) -> (SVec, Option<Transform>) {
        let (_, li) = self.lead(p.i);
        let (_, lj) = self.lead(p.j);
        let mi = li.quotient(p.lcm);
        let mj = lj.quotient(p.lcm);
        let one = Scalar::one();
        let a = SVec::default().sub_mul(&-&one, mi, &self.elems[p.i], self.order);
        let s = a.sub_mul(&one, mj, &self.elems[p.j], self.order);
        let t = self.transforms.as_ref().map(|ts| {
            let mut t = vec![Polynomial::zero(ts[p.i][0].field()); ts[p.i].len()];
            transform_sub_mul(&mut t, &-&one, mi, &ts[p.i]);
            transform_sub_mul(&mut t, &one, mj, &ts[p.j]);
            t
        });
        (s, t)
    }
}

/// Computes a reduced Gröbner basis of the module generated by `gens`.
pub fn buchberger(
    gens: &[ModuleVector],
    order: ModuleOrder,
    track_cofactors: bool,
) -> Result<GroebnerBasis, GroebnerError> {
    let first = gens.first().ok_or(GroebnerError::EmptyInput)?;
    let rank = first.rank();
    if rank == 0 || gens.iter().any(|g| g.rank() != rank) {
        return Err(GroebnerError::RankMismatch);
    }
    let mut field = Field::rationals();
    for g in gens {
        field = field.join(&g.field()?).map_err(|_| GroebnerError::FieldMismatch)?;
    }
    let s = gens.len();
    let mut engine = Engine {
        order: &order,
        ideal: rank == 1,
        elems: Vec::new(),
        transforms: track_cofactors.then(Vec::new),
        basis: Vec::new(),
        pairs: Vec::new(),
    };
    for (k, g) in gens.iter().enumerate() {
        let v = SVec::from_vector(g, &order);
        let t = track_cofactors.then(|| {
            (0..s)
                .map(|j| {
                    if j == k {
                        Polynomial::one(&field)
                    } else {
                        Polynomial::zero(&field)
                    }
                })
                .collect::<Transform>()
        });
        let (r, t) = engine.reduce_against_basis(v, t);
        if !r.is_zero() {
            engine.insert(r, t);
        }
    }
    while let Some(pair) = engine.next_pair() {
        let (sv, t) = engine.s_vector(&pair);
        let (r, t) = engine.reduce_against_basis(sv, t);
        if !r.is_zero() {
            engine.insert(r, t);
        }
    }

    // inter-reduce the (already minimal) basis and sort by leading term
    let mut basis = engine.basis.clone();
    basis.sort_by_key(|&i| engine.elems[i].lead().unwrap().key);
    let mut elems = Vec::with_capacity(basis.len());
    let mut transforms = track_cofactors.then(Vec::new);
    for (k, &i) in basis.iter().enumerate() {
        let v = engine.elems[i].clone();
        let others: Vec<&SVec> = basis
            .iter()
            .enumerate()
            .filter(|(k2, _)| *k2 != k)
            .map(|(_, &j)| &engine.elems[j])
            .collect();
        let lead = v.lead().unwrap().clone();
        let tail = SVec(v.0[..v.0.len() - 1].to_vec());
        let mut cof = track_cofactors.then(|| vec![Polynomial::zero(&field); others.len()]);
        let mut reduced = reduce(tail, &others, &order, cof.as_mut());
        reduced.0.push(lead);
        elems.push(reduced);
        if let (Some(out), Some(cof)) = (transforms.as_mut(), cof) {
            let ts = engine.transforms.as_ref().unwrap();
            let mut t = ts[i].clone();
            let other_idx: Vec<usize> = basis
                .iter()
                .enumerate()
                .filter(|(k2, _)| *k2 != k)
                .map(|(_, &j)| j)
                .collect();
            for (c, &j) in cof.iter().zip(&other_idx) {
                if c.is_zero() {
                    continue;
                }
                for (a, b) in t.iter_mut().zip(&ts[j]) {
                    *a = &*a - &(c * b);
                }
            }
            out.push(t);
        }
    }
    let generators = elems.iter().map(|e| e.to_vector(rank, &field)).collect();
    Ok(GroebnerBasis {
        generators,
        order,
        rank,
        field,
        elems,
        transform: transforms,
        input_count: s,
    })
}

/// Gröbner basis of the ideal generated by `polys`.
pub fn ideal_basis(polys: &[Polynomial], order: MonomialOrder, track_cofactors: bool) -> Result<GroebnerBasis, GroebnerError> {
    let gens: Vec<ModuleVector> = polys.iter().cloned().map(ModuleVector::scalar).collect();
    buchberger(&gens, ModuleOrder::term_over_position(order), track_cofactors)
}

/// Result of reducing a vector modulo a basis.
#[derive(Debug, Clone)]
pub struct NormalForm {
    pub remainder: ModuleVector,
    /// Multipliers of the basis generators, when tracked.
    pub cofactors: Option<Vec<Polynomial>>,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[ModuleVector] {
        &self.generators
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `transform()[k]` expresses generator `k` in the input generators.
    pub fn transform(&self) -> Option<&[Transform]> {
        self.transform.as_deref()
    }

    pub fn input_count(&self) -> usize {
        self.input_count
    }

    /// Leading (position, monomial) of every generator.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elems
            .iter()
            .map(|e| {
                let t = e.lead().unwrap();
                (t.pos, t.mon)
            })
            .collect()
    }

    /// True when the basis is the whole ring (ideal case) or contains a unit vector.
    pub fn contains_unit(&self) -> bool {
        self.leading_terms().iter().any(|(_, m)| *m == Monomial::ONE)
    }

    pub fn normal_form(&self, v: &ModuleVector, track_cofactors: bool) -> Result<NormalForm, GroebnerError> {
        if v.rank() != self.rank {
            return Err(GroebnerError::RankMismatch);
        }
        let field = self.field.join(&v.field()?).map_err(|_| GroebnerError::FieldMismatch)?;
        let refs: Vec<&SVec> = self.elems.iter().collect();
        let mut cof = track_cofactors.then(|| vec![Polynomial::zero(&field); refs.len()]);
        let r = reduce(SVec::from_vector(v, &self.order), &refs, &self.order, cof.as_mut());
        Ok(NormalForm {
            remainder: r.to_vector(self.rank, &field),
            cofactors: cof,
        })
    }

    /// Normal form of a polynomial modulo an ideal basis.
    pub fn reduce_poly(&self, p: &Polynomial) -> Polynomial {
        assert_eq!(self.rank, 1, "reduce_poly needs an ideal basis");
        let nf = self
            .normal_form(&ModuleVector::scalar(p.clone()), false)
            .expect("rank one");
        nf.remainder.components.into_iter().next().unwrap()
    }

    /// Expresses `v` in the input generators when it lies in the module.
    /// Requires a basis built with cofactor tracking.
    pub fn certificate(&self, v: &ModuleVector) -> Result<Option<Vec<Polynomial>>, GroebnerError> {
        let transform = self.transform.as_ref().expect("basis built without cofactor tracking");
        let nf = self.normal_form(v, true)?;
        if !nf.remainder.is_zero() {
            return Ok(None);
        }
        let field = nf.remainder.field()?;
        let mut cert = vec![Polynomial::zero(&field); self.input_count];
        for (c, t) in nf.cofactors.unwrap().iter().zip(transform) {
            if c.is_zero() {
                continue;
            }
            for (a, b) in cert.iter_mut().zip(t) {
                *a = &*a + &(c * b);
            }
        }
        Ok(Some(cert))
    }

    pub fn contains(&self, v: &ModuleVector) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(v, false)?.remainder.is_zero())
    }

    /// Checks Buchberger's criterion: every S-vector reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let refs: Vec<&SVec> = self.elems.iter().collect();
        let one = Scalar::one();
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                let (a, b) = (self.elems[i].lead().unwrap(), self.elems[j].lead().unwrap());
                if a.pos != b.pos {
                    continue;
                }
                let l = a.mon.lcm(b.mon);
                let s = SVec::default()
                    .sub_mul(&-&one, a.mon.quotient(l), &self.elems[i], &self.order)
                    .sub_mul(&one, b.mon.quotient(l), &self.elems[j], &self.order);
                if !reduce(s, &refs, &self.order, None).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// No leading term divides another and every coefficient is normalized.
    pub fn is_reduced(&self) -> bool {
        let lts = self.leading_terms();
        for (i, (pi, mi)) in lts.iter().enumerate() {
            if !self.elems[i].lead().unwrap().coeff.is_one() {
                return false;
            }
            for (j, e) in self.elems.iter().enumerate() {
                if i == j {
                    continue;
                }
                if e.0.iter().any(|t| t.pos == *pi && mi.divides(t.mon)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Membership verdict.
#[derive(Debug, Clone)]
pub enum Membership {
    /// `v = Σ certificate[i]·gens[i]`.
    Member(Vec<Polynomial>),
    NotMember { remainder: ModuleVector },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

pub fn membership(v: &ModuleVector, gens: &[ModuleVector], order: ModuleOrder) -> Result<Membership, GroebnerError> {
    let gb = buchberger(gens, order, true)?;
    if v.rank() != gb.rank() {
        return Err(GroebnerError::RankMismatch);
    }
    match gb.certificate(v)? {
        Some(c) => Ok(Membership::Member(c)),
        None => Ok(Membership::NotMember {
            remainder: gb.normal_form(v, false)?.remainder,
        }),
    }
}

/// Generators of `{a : Σ a_i·gens_i = 0}`, via a Gröbner basis of the
/// augmented vectors `(gens_i, e_i)` with the original positions eliminated.
pub fn syzygies(gens: &[ModuleVector], base: MonomialOrder) -> Result<Vec<ModuleVector>, GroebnerError> {
    let first = gens.first().ok_or(GroebnerError::EmptyInput)?;
    let r = first.rank();
    if gens.iter().any(|g| g.rank() != r) {
        return Err(GroebnerError::RankMismatch);
    }
    let mut field = Field::rationals();
    for g in gens {
        field = field.join(&g.field()?).map_err(|_| GroebnerError::FieldMismatch)?;
    }
    let s = gens.len();
    let augmented: Vec<ModuleVector> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut comps = g.components.clone();
            for j in 0..s {
                comps.push(if i == j {
                    Polynomial::one(&field)
                } else {
                    Polynomial::zero(&field)
                });
            }
            ModuleVector::new(comps)
        })
        .collect();
    let order = ModuleOrder {
        base,
        position_rule: PositionRule::EliminateFirst(r),
    };
    let gb = buchberger(&augmented, order, false)?;
    Ok(gb
        .generators()
        .iter()
        .filter(|v| v.components[..r].iter().all(Polynomial::is_zero))
        .map(|v| ModuleVector::new(v.components[r..].to_vec()))
        .collect())
}
