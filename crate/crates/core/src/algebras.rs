//! Concrete DGAs: free graded-commutative algebras (polynomial ⊗ exterior, with an
//! optional derivation differential) and free associative algebras.

use std::fmt;
use std::marker::PhantomData;

use crate::dg::{Check, Dga, DgaExt, Elem, LinMap};
use crate::graded::Lin;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i32) -> Generator {
        Generator {
            name: name.into(),
            degree,
        }
    }
}

/// Exponent vector over the generators of a [`FreeGc`].
pub type Mono = Vec<u32>;

/// Free graded-commutative algebra on positive-degree generators: polynomial on
/// the even ones, exterior on the odd ones. The differential is the derivation
/// determined by the images of the generators.
#[derive(Clone)]
pub struct FreeGc<K: Field> {
    gens: Vec<Generator>,
    dgen: Vec<Lin<Mono, K>>,
    _k: PhantomData<K>,
}

impl<K: Field> fmt::Debug for FreeGc<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeGc[")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", g.name, g.degree)?;
        }
        write!(f, "]")
    }
}

impl<K: Field> FreeGc<K> {
    /// Free algebra with zero differential. Panics on non-positive degrees.
    pub fn new(gens: Vec<Generator>) -> Self {
        for g in &gens {
            assert!(
                g.degree > 0,
                "generator {} must have positive degree",
                g.name
            );
        }
        let n = gens.len();
        FreeGc {
            gens,
            dgen: vec![Lin::zero(); n],
            _k: PhantomData,
        }
    }

    /// Polynomial algebra on `(name, degree)` pairs; degrees must be even.
    pub fn polynomial(gens: &[(&str, i32)]) -> Self {
        for (n, d) in gens {
            assert!(d % 2 == 0, "polynomial generator {n} has odd degree {d}");
        }
        FreeGc::new(gens.iter().map(|(n, d)| Generator::new(*n, *d)).collect())
    }

    /// The ground field as a DGA.
    pub fn ground() -> Self {
        FreeGc::new(vec![])
    }

    /// Sets the differential on generator `i`. The caller is responsible for
    /// `d² = 0`; [`crate::dg::check_dga`] verifies it.
    pub fn with_differential(mut self, i: usize, value: Lin<Mono, K>) -> Self {
        self.dgen[i] = value;
        self
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    /// Monomial of a single generator.
    pub fn gen(&self, i: usize) -> Mono {
        let mut m = vec![0; self.gens.len()];
        m[i] = 1;
        m
    }

    pub fn gen_elem(&self, i: usize) -> Lin<Mono, K> {
        Lin::basis(self.gen(i))
    }

    pub fn has_zero_differential(&self) -> bool {
        self.dgen.iter().all(|x| x.is_zero())
    }

    fn is_odd(&self, i: usize) -> bool {
        self.gens[i].degree & 1 != 0
    }

    fn mono_basis(&self, n: i32, i: usize, cur: &mut Mono, out: &mut Vec<Mono>) {
        if i == self.gens.len() {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let d = self.gens[i].degree;
        let max = if self.is_odd(i) { 1 } else { (n / d) as u32 };
        for e in 0..=max {
            let rest = n - d * e as i32;
            if rest < 0 {
                break;
            }
            cur[i] = e;
            self.mono_basis(rest, i + 1, cur, out);
        }
        cur[i] = 0;
    }
}

impl<K: Field> Dga for FreeGc<K> {
    type K = K;
    type B = Mono;

    fn degree(&self, b: &Mono) -> i32 {
        b.iter()
            .zip(&self.gens)
            .map(|(e, g)| *e as i32 * g.degree)
            .sum()
    }

    fn unit(&self) -> Mono {
        vec![0; self.gens.len()]
    }

    fn is_unit(&self, b: &Mono) -> bool {
        b.iter().all(|e| *e == 0)
    }

    fn mul(&self, x: &Mono, y: &Mono) -> Lin<Mono, K> {
        let mut odd = false;
        // odd generators of x that sit after an odd generator of y must pass it
        let mut odd_in_x_after = 0u32;
        for i in (0..self.gens.len()).rev() {
            if !self.is_odd(i) {
                continue;
            }
            if x[i] == 1 && y[i] == 1 {
                return Lin::zero();
            }
            if y[i] == 1 && odd_in_x_after & 1 == 1 {
                odd = !odd;
            }
            if x[i] == 1 {
                odd_in_x_after += 1;
            }
        }
        let m: Mono = x.iter().zip(y).map(|(a, b)| a + b).collect();
        Lin::signed(m, odd)
    }

    fn d(&self, x: &Mono) -> Lin<Mono, K> {
        let mut out = Lin::zero();
        let mut prefix_degree = 0;
        for i in 0..self.gens.len() {
            let e = x[i];
            if e == 0 {
                continue;
            }
            if !self.dgen[i].is_zero() {
                let mut prefix = vec![0; x.len()];
                prefix[..i].copy_from_slice(&x[..i]);
                let mut suffix = vec![0; x.len()];
                suffix[i + 1..].copy_from_slice(&x[i + 1..]);
                let mut power = vec![0; x.len()];
                power[i] = e - 1;
                let coef = if self.is_odd(i) {
                    K::one()
                } else {
                    K::from_i64(e as i64)
                };
                let middle = self
                    .mul_lin(&Lin::basis(power), &self.dgen[i])
                    .scaled(&coef);
                let t = self.mul_lin(
                    &self.mul_lin(&Lin::basis(prefix), &middle),
                    &Lin::basis(suffix),
                );
                out.add_signed(&t, prefix_degree & 1 != 0);
            }
            prefix_degree += e as i32 * self.gens[i].degree;
        }
        out
    }

    fn basis(&self, n: i32) -> Vec<Mono> {
        if n < 0 {
            return vec![];
        }
        let mut out = Vec::new();
        let mut cur = vec![0; self.gens.len()];
        self.mono_basis(n, 0, &mut cur, &mut out);
        out
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn show(&self, b: &Mono) -> String {
        show_mono(&self.gens, b)
    }
}

pub fn show_mono(gens: &[Generator], b: &[u32]) -> String {
    let mut parts = Vec::new();
    for (g, e) in gens.iter().zip(b) {
        match e {
            0 => {}
            1 => parts.push(g.name.clone()),
            e => parts.push(format!("{}^{}", g.name, e)),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Free associative algebra on homogeneous generators with zero differential.
#[derive(Clone, Debug)]
pub struct FreeAssoc<K: Field> {
    gens: Vec<Generator>,
    _k: PhantomData<K>,
}

impl<K: Field> FreeAssoc<K> {
    pub fn new(gens: &[(&str, i32)]) -> Self {
        for (n, d) in gens {
            assert!(*d > 0, "generator {n} must have positive degree");
        }
        FreeAssoc {
            gens: gens.iter().map(|(n, d)| Generator::new(*n, *d)).collect(),
            _k: PhantomData,
        }
    }

    pub fn gen(&self, i: usize) -> Vec<u16> {
        vec![i as u16]
    }
}

impl<K: Field> Dga for FreeAssoc<K> {
    type K = K;
    type B = Vec<u16>;

    fn degree(&self, b: &Vec<u16>) -> i32 {
        b.iter().map(|i| self.gens[*i as usize].degree).sum()
    }
    fn unit(&self) -> Vec<u16> {
        vec![]
    }
    fn mul(&self, x: &Vec<u16>, y: &Vec<u16>) -> Lin<Vec<u16>, K> {
        let mut w = x.clone();
        w.extend_from_slice(y);
        Lin::basis(w)
    }
    fn d(&self, _x: &Vec<u16>) -> Lin<Vec<u16>, K> {
        Lin::zero()
    }
    fn basis(&self, n: i32) -> Vec<Vec<u16>> {
        fn rec(gens: &[Generator], n: i32, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
            if n == 0 {
                out.push(cur.clone());
                return;
            }
            for (i, g) in gens.iter().enumerate() {
                if g.degree <= n {
                    cur.push(i as u16);
                    rec(gens, n - g.degree, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        if n >= 0 {
            rec(&self.gens, n, &mut Vec::new(), &mut out);
        }
        out
    }
    fn is_commutative(&self) -> bool {
        self.gens.is_empty() || (self.gens.len() == 1 && self.gens[0].degree % 2 == 0)
    }
    fn show(&self, b: &Vec<u16>) -> String {
        if b.is_empty() {
            return "1".into();
        }
        b.iter()
            .map(|i| self.gens[*i as usize].name.as_str())
            .collect::<Vec<_>>()
            .join("·")
    }
}

/// A degree-0 DGA map given on basis elements.
pub type AlgMap<'a, S, T> = LinMap<'a, <S as Dga>::B, <T as Dga>::B, <S as Dga>::K>;

pub fn identity_map<'a, A: Dga>() -> AlgMap<'a, A, A> {
    LinMap::new(0, |b: &A::B| Lin::basis(b.clone()))
}

/// The augmentation `A → k`.
pub fn augmentation_map<'a, A: Dga + 'a>(a: &'a A) -> LinMap<'a, A::B, Mono, A::K> {
    LinMap::new(0, move |b: &A::B| {
        if a.is_unit(b) {
            Lin::basis(vec![])
        } else {
            Lin::zero()
        }
    })
}

/// Map out of a free graded-commutative algebra determined by generator images.
pub fn free_gc_map<'a, K: Field, T: Dga<K = K> + 'a>(
    target: &'a T,
    images: Vec<Elem<T>>,
) -> LinMap<'a, Mono, T::B, K> {
    LinMap::new(0, move |m: &Mono| {
        let mut acc = target.one();
        for (i, e) in m.iter().enumerate() {
            for _ in 0..*e {
                acc = target.mul_lin(&acc, &images[i]);
            }
        }
        acc
    })
}

/// DGA-map axioms on the source basis up to `max_degree`.
pub fn check_dga_map<S: Dga, T: Dga<K = S::K>>(
    s: &S,
    t: &T,
    f: &AlgMap<'_, S, T>,
    max_degree: i32,
) -> Check {
    let basis: Vec<S::B> = (0..=max_degree).flat_map(|n| s.basis(n)).collect();
    let show = |x: &Elem<T>| t.show_lin(x);
    let unit = if f.apply(&s.unit()) == t.one() {
        Check::Pass { checked: 1 }
    } else {
        Check::Fail {
            at: "unit".into(),
            lhs: show(&f.apply(&s.unit())),
            rhs: "1".into(),
        }
    };
    unit.and(|| {
        Check::run(
            basis.iter(),
            |b| s.show(b),
            show,
            |b| (t.d_lin(&f.apply(b)), f.apply_lin(&s.d(b))),
        )
    })
    .and(|| {
        let pairs = basis
            .iter()
            .flat_map(|x| basis.iter().map(move |y| (x, y)))
            .filter(|(x, y)| s.degree(x) + s.degree(y) <= max_degree);
        Check::run(
            pairs,
            |(x, y)| format!("{} , {}", s.show(x), s.show(y)),
            show,
            |(x, y)| {
                (
                    f.apply_lin(&s.mul(x, y)),
                    t.mul_lin(&f.apply(x), &f.apply(y)),
                )
            },
        )
    })
    .and(|| {
        for b in &basis {
            if f.apply(b).keys().any(|y| t.degree(y) != s.degree(b)) {
                return Check::Fail {
                    at: s.show(b),
                    lhs: show(&f.apply(b)),
                    rhs: format!("an element of degree {}", s.degree(b)),
                };
            }
        }
        Check::Pass {
            checked: basis.len(),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dg::check_dga;
    use crate::scalar::Q;

    #[test]
    fn exterior_square_vanishes() {
        let a: FreeGc<Q> = FreeGc::new(vec![Generator::new("u", 3)]);
        assert!(a.mul(&vec![1], &vec![1]).is_zero());
        assert_eq!(a.basis(3), vec![vec![1]]);
        assert!(a.basis(6).is_empty());
    }

    #[test]
    fn odd_generators_anticommute() {
        let a: FreeGc<Q> = FreeGc::new(vec![Generator::new("u", 1), Generator::new("v", 3)]);
        let uv = a.mul(&vec![1, 0], &vec![0, 1]);
        let vu = a.mul(&vec![0, 1], &vec![1, 0]);
        assert_eq!(uv, vu.negated());
    }

    #[test]
    fn acyclic_pair_is_dga() {
        let a: FreeGc<Q> = FreeGc::new(vec![Generator::new("x", 2), Generator::new("e", 1)]);
        let dx = a.gen_elem(0);
        let a = a.with_differential(1, dx);
        assert!(check_dga(&a, 8).passed());
    }
}
