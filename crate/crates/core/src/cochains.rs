//! Normalized cochains of finite simplicial sets and interval-cut operations.
//!
//! The algebra uses the basis `{1} ∪ {e_v : v ≠ basepoint} ∪ {e_x : dim x ≥ 1}`
//! of dual cochains, so that the unit is a basis element and the augmentation
//! (restriction to the basepoint) is the coefficient of `1`.

use std::collections::HashMap;
use std::marker::PhantomData;
use std::sync::{Arc, Mutex};

use crate::dg::{Check, Dga, DgaExt, Elem};
use crate::graded::Lin;
use crate::linalg::{CohomologyDegree, SparseVec};
use crate::scalar::Field;
use crate::simplicial::{GenSimplex, SimplexId, SimplicialSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cochain {
    One,
    Dual(SimplexId),
}

type RawKey = (Vec<u8>, Vec<SimplexId>);

pub struct Cochains<K: Field> {
    set: Arc<SimplicialSet>,
    /// `coboundary[n][k]`: the simplices `τ` with `d_i τ = x_k`, and the parity of `i`
    cobound: Vec<Vec<Vec<(SimplexId, bool)>>>,
    cache: Mutex<HashMap<RawKey, Lin<SimplexId, K>>>,
    _k: PhantomData<K>,
}

impl<K: Field> std::fmt::Debug for Cochains<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Cochains({})", self.set.name)
    }
}

impl<K: Field> Cochains<K> {
    /// Cochains of the quotient by a spanning tree: a connected model with one vertex.
    pub fn connected(set: SimplicialSet) -> Self {
        let name = set.name.clone();
        let q = set
            .collapse_tree()
            .unwrap_or_else(|| panic!("{name} is not connected"));
        Self::new(q)
    }

    pub fn new(set: SimplicialSet) -> Self {
        let mut cobound: Vec<Vec<Vec<(SimplexId, bool)>>> =
            set.counts().iter().map(|&c| vec![vec![]; c]).collect();
        for n in 1..=set.dim() {
            for t in set.simplices(n) {
                let g = GenSimplex::nondegenerate(t);
                for i in 0..=n as usize {
                    let f = set.face(&g, i);
                    if f.is_nondegenerate() {
                        cobound[f.base.dim as usize][f.base.idx as usize].push((t, i % 2 == 1));
                    }
                }
            }
        }
        Cochains {
            set: Arc::new(set),
            cobound,
            cache: Mutex::new(HashMap::new()),
            _k: PhantomData,
        }
    }

    /// Ranks of `H^n` of the normalized cochains, `n = 0..=dim`.
    pub fn cohomology_ranks(&self) -> Vec<usize> {
        let d = |n: u32| -> Vec<SparseVec<K>> {
            self.set
                .simplices(n)
                .map(|x| self.raw_d(x).relabel(|s| s.idx as usize))
                .collect()
        };
        (0..=self.set.dim())
            .map(|n| {
                let boundaries = if n == 0 { vec![] } else { d(n - 1) };
                CohomologyDegree::compute(self.set.counts()[n as usize], &boundaries, &d(n)).rank()
            })
            .collect()
    }

    pub fn set(&self) -> &SimplicialSet {
        &self.set
    }

    /// Cochain in the dual-simplex basis.
    pub fn to_raw(&self, x: &Elem<Self>) -> Lin<SimplexId, K> {
        x.map(|b| match b {
            Cochain::One => self.set.simplices(0).map(|v| (v, K::one())).collect(),
            Cochain::Dual(s) => Lin::basis(*s),
        })
    }

    pub fn from_raw(&self, x: &Lin<SimplexId, K>) -> Elem<Self> {
        let bp = self.set.basepoint;
        let at_bp = x.coeff(&bp);
        let mut out = Lin::zero();
        for (s, c) in x.iter() {
            if s.dim == 0 {
                if *s != bp {
                    out.add_term(Cochain::Dual(*s), c.clone() - at_bp.clone());
                }
            } else {
                out.add_term(Cochain::Dual(*s), c.clone());
            }
        }
        out.add_term(Cochain::One, at_bp);
        out
    }

    /// `δ e_x = Σ (−1)^i e_τ` over `d_i τ = x`.
    pub fn raw_d(&self, x: SimplexId) -> Lin<SimplexId, K> {
        let mut out = Lin::zero();
        for (t, odd) in &self.cobound[x.dim as usize][x.idx as usize] {
            out.add_term(*t, K::sign(*odd));
        }
        out
    }

    pub fn raw_d_lin(&self, x: &Lin<SimplexId, K>) -> Lin<SimplexId, K> {
        x.map(|s| self.raw_d(*s))
    }

    /// Interval-cut operation of the sequence `u` (values `1..=n`) on dual simplices.
    pub fn interval_cut_raw(&self, u: &[u8], args: &[SimplexId]) -> Lin<SimplexId, K> {
        let key = (u.to_vec(), args.to_vec());
        if let Some(v) = self.cache.lock().unwrap().get(&key) {
            return v.clone();
        }
        let v = self.compute_cut(u, args);
        self.cache.lock().unwrap().insert(key, v.clone());
        v
    }

    fn compute_cut(&self, u: &[u8], args: &[SimplexId]) -> Lin<SimplexId, K> {
        assert!(
            u.iter().all(|&k| k >= 1 && k as usize <= args.len()),
            "sequence values exceed arity"
        );
        let mut out = Lin::zero();
        for (sigma, lens) in self.cut_terms(u, args) {
            out.add_term(sigma, K::sign(self.cut_parity(u, &lens)));
        }
        out
    }

    /// Simplices and interval lengths of all nondegenerate cuts matching `args`.
    pub(crate) fn cut_terms(&self, u: &[u8], args: &[SimplexId]) -> Vec<(SimplexId, Vec<u32>)> {
        let n = args.len();
        let m = u.len();
        let total: i64 = args.iter().map(|a| a.dim as i64).sum::<i64>() - (m as i64 - n as i64);
        let mut res = Vec::new();
        if total < 0 || total > self.set.dim() as i64 {
            return res;
        }
        let r = total as u32;
        let need: Vec<usize> = args.iter().map(|a| a.dim as usize + 1).collect();
        for sigma in self.set.simplices(r) {
            let mut pieces: Vec<Vec<u32>> = vec![vec![]; n];
            let mut lens = Vec::with_capacity(m);
            let mut st = CutState {
                u,
                need: &need,
                r,
                pieces: &mut pieces,
                lens: &mut lens,
            };
            let mut found: Vec<(Vec<Vec<u32>>, Vec<u32>)> = Vec::new();
            st.rec(0, 0, &mut found);
            for (pieces, lens) in found {
                let ok = pieces.iter().zip(args).all(|(vs, a)| {
                    let g = self.set.restrict(sigma, vs);
                    g.is_nondegenerate() && g.base == *a
                });
                if ok {
                    res.push((sigma, lens));
                }
            }
        }
        res
    }

    /// Inner intervals (followed later by one of the same value) count with degree
    /// `length + 1`, final ones with degree `length`; the sign is the Koszul sign of
    /// regrouping the intervals by value, times `(−1)^{Σ (end + 1)}` over inner intervals.
    fn cut_parity(&self, u: &[u8], lens: &[u32]) -> bool {
        let m = u.len();
        let inner: Vec<bool> = (0..m).map(|j| u[j + 1..].contains(&u[j])).collect();
        let degs: Vec<u32> = (0..m).map(|j| lens[j] + inner[j] as u32).collect();
        let mut odd = false;
        for j in 0..m {
            for k in j + 1..m {
                if u[j] > u[k] && degs[j] & degs[k] & 1 == 1 {
                    odd = !odd;
                }
            }
        }
        let mut end = 0;
        for j in 0..m {
            end += lens[j];
            if inner[j] && end & 1 == 0 {
                odd = !odd;
            }
        }
        odd
    }

    /// Multilinear extension of [`Cochains::interval_cut_raw`] to algebra elements.
    pub fn interval_cut(&self, u: &[u8], args: &[Elem<Self>]) -> Elem<Self> {
        let raw: Vec<Lin<SimplexId, K>> = args.iter().map(|a| self.to_raw(a)).collect();
        let mut acc: Lin<Vec<SimplexId>, K> = Lin::basis(vec![]);
        for a in &raw {
            acc = acc.bilinear(a, |w, s| {
                let mut w = w.clone();
                w.push(*s);
                Lin::basis(w)
            });
        }
        let out = acc.map(|w| self.interval_cut_raw(u, w));
        self.from_raw(&out)
    }

    /// `a ∪_i b`, the interval cut of the alternating sequence `(1,2,1,2,…)` of length `i+2`.
    pub fn cup_i(&self, i: usize, a: &Elem<Self>, b: &Elem<Self>) -> Elem<Self> {
        let u: Vec<u8> = (0..i + 2).map(|j| if j % 2 == 0 { 1 } else { 2 }).collect();
        self.interval_cut(&u, &[a.clone(), b.clone()])
    }

    /// `E_ℓ(a; b_1, …, b_ℓ)`: `(−1)^{ℓ(ℓ+1)/2}` times the cut of `(1,2,1,3,1,…,1,ℓ+1,1)`,
    /// so that `−E_1` is the cup-1 product.
    pub fn e_op(&self, a: &Elem<Self>, bs: &[Elem<Self>]) -> Elem<Self> {
        let mut args = vec![a.clone()];
        args.extend(bs.iter().cloned());
        let v = self.interval_cut(&e_sequence(bs.len()), &args);
        let l = bs.len();
        if (l * (l + 1) / 2) % 2 == 1 {
            v.negated()
        } else {
            v
        }
    }

    /// `F_{p,q}(b_1..b_p; c_1..c_q)`, see [`f_sequence`].
    pub fn f_pq(&self, bs: &[Elem<Self>], cs: &[Elem<Self>]) -> Elem<Self> {
        let u = f_sequence(bs.len(), cs.len());
        let mut args = bs.to_vec();
        args.extend(cs.iter().cloned());
        self.interval_cut(&u, &args)
    }

    /// Pullback along a simplicial map given on nondegenerate simplices.
    pub fn pullback(
        &self,
        source: &Cochains<K>,
        map: &dyn Fn(SimplexId) -> GenSimplex,
        x: &Elem<Self>,
    ) -> Elem<Cochains<K>> {
        let raw = self.to_raw(x);
        let mut out = Lin::zero();
        for n in 0..=source.set.dim() {
            for s in source.set.simplices(n) {
                let g = map(s);
                if g.is_nondegenerate() {
                    let c = raw.coeff(&g.base);
                    if !c.is_zero() {
                        out.add_term(s, c);
                    }
                }
            }
        }
        source.from_raw(&out)
    }
}

/// Sign in front of the transposed term in `D(∪_{i+1}) = ∪_i ± ∪_i∘(1 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transposition {
    /// `(−1)^{i+1}`: the form compatible with `D² = 0`.
    Alternating,
    /// Always `−`.
    Minus,
}

impl<K: Field> Cochains<K> {
    fn raw_cup(&self, i: usize, x: SimplexId, y: SimplexId) -> Lin<SimplexId, K> {
        let u: Vec<u8> = (0..i + 2).map(|j| if j % 2 == 0 { 1 } else { 2 }).collect();
        self.interval_cut_raw(&u, &[x, y])
    }

    /// `Dφ(x,y) = dφ(x,y) − (−1)^{|φ|}(φ(dx,y) + (−1)^{|x|}φ(x,dy))`.
    fn hom_d_binary(
        &self,
        phi_degree: i32,
        phi: &dyn Fn(SimplexId, SimplexId) -> Lin<SimplexId, K>,
        x: SimplexId,
        y: SimplexId,
    ) -> Lin<SimplexId, K> {
        let mut out = self.raw_d_lin(&phi(x, y));
        let mut inner = Lin::zero();
        for (dx, c) in self.raw_d(x).iter() {
            inner.add_scaled(&phi(*dx, y), c);
        }
        for (dy, c) in self.raw_d(y).iter() {
            inner.add_scaled(&phi(x, *dy), &(c.clone() * K::sign(x.dim & 1 == 1)));
        }
        out.add_signed(&inner, phi_degree & 1 == 0);
        out
    }

    fn transposed(&self, i: usize, x: SimplexId, y: SimplexId) -> Lin<SimplexId, K> {
        let mut v = self.raw_cup(i, y, x);
        if x.dim & y.dim & 1 == 1 {
            v = v.negated();
        }
        v
    }

    /// Both sides of the coherence for `∪_{i+1}` on a pair of dual simplices.
    pub fn coherence_sides(
        &self,
        i: usize,
        form: Transposition,
        x: SimplexId,
        y: SimplexId,
    ) -> (Lin<SimplexId, K>, Lin<SimplexId, K>) {
        let lhs = self.hom_d_binary(-(i as i32 + 1), &|a, b| self.raw_cup(i + 1, a, b), x, y);
        let mut rhs = self.raw_cup(i, x, y);
        let minus = match form {
            Transposition::Alternating => i.is_multiple_of(2),
            Transposition::Minus => true,
        };
        rhs.add_signed(&self.transposed(i, x, y), minus);
        (lhs, rhs)
    }

    fn raw_pairs(&self, max_degree: u32) -> Vec<(SimplexId, SimplexId)> {
        let all: Vec<SimplexId> = (0..=self.set.dim().min(max_degree))
            .flat_map(|n| self.set.simplices(n))
            .collect();
        let mut out = Vec::new();
        for x in &all {
            for y in &all {
                if x.dim + y.dim <= max_degree {
                    out.push((*x, *y));
                }
            }
        }
        out
    }

    /// The coherence for `∪_{i+1}` on all pairs of dual simplices of total degree `≤ max_degree`.
    pub fn steenrod_check(&self, i: usize, form: Transposition, max_degree: u32) -> Check {
        Check::run(
            self.raw_pairs(max_degree),
            |(x, y)| {
                format!(
                    "({}, {})",
                    self.show_raw(&Lin::basis(*x)),
                    self.show_raw(&Lin::basis(*y))
                )
            },
            |v| self.show_raw(v),
            |(x, y)| self.coherence_sides(i, form, *x, *y),
        )
    }

    /// A pair on which `D(∪_1 − ∪_1∘(1 2))` is nonzero. Since `D² = 0`, no `∪_2` can then
    /// satisfy `D(∪_2) = ∪_1 − ∪_1∘(1 2)`.
    pub fn transposition_obstruction(
        &self,
        max_degree: u32,
    ) -> Option<(SimplexId, SimplexId, Lin<SimplexId, K>)> {
        let r = |a: SimplexId, b: SimplexId| {
            let mut v = self.raw_cup(1, a, b);
            v.sub_lin(&self.transposed(1, a, b));
            v
        };
        self.raw_pairs(max_degree).into_iter().find_map(|(x, y)| {
            let v = self.hom_d_binary(-1, &r, x, y);
            (!v.is_zero()).then_some((x, y, v))
        })
    }
}

/// `(1,2,1,3,1,…,1,ℓ+1,1)`.
pub fn e_sequence(l: usize) -> Vec<u8> {
    let mut u = vec![1u8];
    for j in 0..l {
        u.push(j as u8 + 2);
        u.push(1);
    }
    u
}

/// `(1,p+1, 1,p+2, …, 1,p+q, 1,p+q, 2,p+q, …, p,p+q)`; for `p = q = 1` this is `(1,2,1,2)`.
pub fn f_sequence(p: usize, q: usize) -> Vec<u8> {
    assert!(p >= 1 && q >= 1);
    let mut u = Vec::new();
    for j in 1..=q {
        u.extend([1, (p + j) as u8]);
    }
    for i in 1..=p {
        u.extend([i as u8, (p + q) as u8]);
    }
    u
}

struct CutState<'a> {
    u: &'a [u8],
    need: &'a [usize],
    r: u32,
    pieces: &'a mut Vec<Vec<u32>>,
    lens: &'a mut Vec<u32>,
}

impl CutState<'_> {
    fn rec(&mut self, j: usize, start: u32, out: &mut Vec<(Vec<Vec<u32>>, Vec<u32>)>) {
        let m = self.u.len();
        if j == m {
            if self
                .pieces
                .iter()
                .zip(self.need)
                .all(|(p, &n)| p.len() == n)
            {
                out.push((self.pieces.clone(), self.lens.clone()));
            }
            return;
        }
        let k = self.u[j] as usize - 1;
        if self.pieces[k].last() == Some(&start) {
            return;
        }
        let ends: Vec<u32> = if j + 1 == m {
            vec![self.r]
        } else {
            (start..=self.r).collect()
        };
        for end in ends {
            let added = (end - start + 1) as usize;
            if self.pieces[k].len() + added > self.need[k] {
                break;
            }
            let before = self.pieces[k].len();
            self.pieces[k].extend(start..=end);
            self.lens.push(end - start);
            self.rec(j + 1, end, out);
            self.lens.pop();
            self.pieces[k].truncate(before);
        }
    }
}

impl<K: Field> Dga for Cochains<K> {
    type K = K;
    type B = Cochain;

    fn degree(&self, b: &Cochain) -> i32 {
        match b {
            Cochain::One => 0,
            Cochain::Dual(s) => s.dim as i32,
        }
    }

    fn unit(&self) -> Cochain {
        Cochain::One
    }

    fn mul(&self, x: &Cochain, y: &Cochain) -> Lin<Cochain, K> {
        match (x, y) {
            (Cochain::One, _) => Lin::basis(*y),
            (_, Cochain::One) => Lin::basis(*x),
            (Cochain::Dual(a), Cochain::Dual(b)) => {
                self.from_raw(&self.interval_cut_raw(&[1, 2], &[*a, *b]))
            }
        }
    }

    fn d(&self, x: &Cochain) -> Lin<Cochain, K> {
        match x {
            Cochain::One => Lin::zero(),
            Cochain::Dual(s) => self.from_raw(&self.raw_d(*s)),
        }
    }

    fn basis(&self, n: i32) -> Vec<Cochain> {
        if n < 0 {
            return vec![];
        }
        let mut out = Vec::new();
        if n == 0 {
            out.push(Cochain::One);
        }
        let bp = self.set.basepoint;
        out.extend(
            self.set
                .simplices(n as u32)
                .filter(|s| *s != bp)
                .map(Cochain::Dual),
        );
        out
    }

    fn is_commutative(&self) -> bool {
        self.set.dim() == 0
    }

    fn show(&self, b: &Cochain) -> String {
        match b {
            Cochain::One => "1".into(),
            Cochain::Dual(s) => format!("e{}", bracket(self.set.name(*s))),
        }
    }
}

fn bracket(name: &str) -> String {
    if name.starts_with('(') {
        name.into()
    } else {
        format!("[{name}]")
    }
}

impl<K: Field> Cochains<K> {
    /// Cochains as a function on all nondegenerate simplices, useful for printing.
    pub fn show_raw(&self, x: &Lin<SimplexId, K>) -> String {
        crate::dg::show_terms(x, |s| format!("e{}", bracket(self.set.name(*s))))
    }

    pub fn elem(&self, name: &str) -> Option<Elem<Self>> {
        let s = self.set.id(name)?;
        Some(self.from_raw(&Lin::basis(s)))
    }

    pub fn dual(&self, s: SimplexId) -> Elem<Self> {
        self.from_raw(&Lin::basis(s))
    }

    pub fn one_elem(&self) -> Elem<Self> {
        self.one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dg::{check_dga, check_dga_axioms};
    use crate::scalar::Q;
    use crate::simplicial::SimplicialMap;

    #[test]
    fn cohomology_of_small_spaces() {
        let ranks = |x: SimplicialSet| Cochains::<Q>::new(x).cohomology_ranks();
        assert_eq!(ranks(SimplicialSet::simplex(0)), vec![1]);
        assert_eq!(ranks(SimplicialSet::simplex(2)), vec![1, 0, 0]);
        assert_eq!(ranks(SimplicialSet::boundary(3)), vec![1, 0, 1]);
        assert_eq!(ranks(SimplicialSet::boundary(4)), vec![1, 0, 0, 1]);
        assert_eq!(ranks(SimplicialSet::circle()), vec![1, 1]);
        let s1 = SimplicialSet::circle();
        assert_eq!(ranks(SimplicialSet::product(&s1, &s1)), vec![1, 2, 1]);
    }

    #[test]
    fn point_is_ground_field() {
        let c = Cochains::<Q>::new(SimplicialSet::simplex(0));
        assert_eq!(c.basis(0), vec![Cochain::One]);
        assert!(c.d(&Cochain::One).is_zero());
        assert!(c.is_commutative());
    }

    #[test]
    fn boundary_triangle_is_dga() {
        let c = Cochains::<Q>::new(SimplicialSet::boundary(2));
        assert_eq!(c.basis(0).len() + c.basis(1).len(), 6);
        assert!(!check_dga(&c, 3).passed());
        assert!(check_dga_axioms(&c, 3).passed());
        let c = Cochains::<Q>::connected(SimplicialSet::boundary(3));
        let r = check_dga(&c, 3);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn single_interval_is_identity() {
        let c = Cochains::<Q>::new(SimplicialSet::boundary(3));
        for n in 0..=2 {
            for s in c.set().simplices(n) {
                assert_eq!(c.interval_cut_raw(&[1], &[s]), Lin::basis(s));
            }
        }
    }

    #[test]
    fn steenrod_coherence_alternating_form() {
        for n in [3, 4] {
            let c = Cochains::<Q>::new(SimplicialSet::boundary(n));
            for i in 0..=2 {
                let r = c.steenrod_check(i, Transposition::Alternating, n);
                assert!(r.passed(), "n={n} i={i}: {r}");
            }
        }
    }

    #[test]
    fn minus_form_fails_only_at_i_1_and_is_obstructed() {
        let c = Cochains::<Q>::new(SimplicialSet::boundary(4));
        assert!(c.steenrod_check(0, Transposition::Minus, 4).passed());
        assert!(!c.steenrod_check(1, Transposition::Minus, 4).passed());
        assert!(c.steenrod_check(2, Transposition::Minus, 4).passed());
        assert!(c.transposition_obstruction(4).is_some());
        let c3 = Cochains::<crate::scalar::F3>::new(SimplicialSet::boundary(4));
        assert!(c3.transposition_obstruction(4).is_some());
    }

    #[test]
    fn pullback_along_an_inclusion_commutes_with_cuts() {
        let (s, t) = (SimplicialSet::boundary(2), SimplicialSet::boundary(3));
        let map = SimplicialMap::by_name(&s, &t).unwrap();
        let (cs, ct) = (Cochains::<Q>::new(s), Cochains::<Q>::new(t));
        let f = |s: SimplexId| map.image(s).clone();
        let all: Vec<Cochain> = (0..=2).flat_map(|n| ct.basis(n)).collect();
        let pb = |x: &Elem<Cochains<Q>>| ct.pullback(&cs, &f, x);
        for u in [vec![1u8, 2], vec![1, 2, 1], vec![1, 2, 1, 2], vec![2, 1, 2]] {
            for a in &all {
                for b in &all {
                    let (a, b) = (Lin::basis(*a), Lin::basis(*b));
                    let lhs = pb(&ct.interval_cut(&u, &[a.clone(), b.clone()]));
                    let rhs = cs.interval_cut(&u, &[pb(&a), pb(&b)]);
                    assert_eq!(lhs, rhs, "{u:?}");
                }
            }
        }
    }

    #[test]
    fn low_operations_are_cup_products() {
        let c = Cochains::<Q>::new(SimplicialSet::boundary(4));
        let all: Vec<Cochain> = (0..=3).flat_map(|n| c.basis(n)).collect();
        for a in &all {
            for b in &all {
                let (a, b) = (Lin::basis(*a), Lin::basis(*b));
                assert_eq!(
                    c.e_op(&a, std::slice::from_ref(&b)),
                    c.cup_i(1, &a, &b).negated()
                );
                assert_eq!(
                    c.f_pq(std::slice::from_ref(&a), std::slice::from_ref(&b)),
                    c.cup_i(2, &a, &b)
                );
                assert_eq!(c.cup_i(0, &a, &b), c.mul_lin(&a, &b));
            }
        }
    }
}
