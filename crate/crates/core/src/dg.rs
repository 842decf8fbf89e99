//! Differential graded algebras and coalgebras, Hom complexes, cup products
//! and homotopies.

use std::fmt;
use std::sync::Arc;

use crate::graded::{Key, Lin};
use crate::scalar::Field;

/// A connected, augmented DGA with a homogeneous basis.
///
/// Degree 0 is spanned by [`Dga::unit`]; the augmentation sends the unit to 1
/// and every other basis element to 0.
pub trait Dga: Send + Sync {
    type K: Field;
    type B: Key;

    fn degree(&self, b: &Self::B) -> i32;
    fn unit(&self) -> Self::B;
    fn is_unit(&self, b: &Self::B) -> bool {
        *b == self.unit()
    }
    fn mul(&self, x: &Self::B, y: &Self::B) -> Lin<Self::B, Self::K>;
    fn d(&self, x: &Self::B) -> Lin<Self::B, Self::K>;
    /// Basis of the degree-`n` part (empty for negative `n`).
    fn basis(&self, n: i32) -> Vec<Self::B>;
    /// Graded commutativity, used to refuse shuffle products on noncommutative input.
    fn is_commutative(&self) -> bool;
    fn show(&self, b: &Self::B) -> String {
        format!("{b:?}")
    }
}

macro_rules! forward_dga {
    ($($ptr:ty),*) => {$(
        impl<A: Dga + ?Sized> Dga for $ptr {
            type K = A::K;
            type B = A::B;
            fn degree(&self, b: &Self::B) -> i32 { (**self).degree(b) }
            fn unit(&self) -> Self::B { (**self).unit() }
            fn is_unit(&self, b: &Self::B) -> bool { (**self).is_unit(b) }
            fn mul(&self, x: &Self::B, y: &Self::B) -> Lin<Self::B, Self::K> { (**self).mul(x, y) }
            fn d(&self, x: &Self::B) -> Lin<Self::B, Self::K> { (**self).d(x) }
            fn basis(&self, n: i32) -> Vec<Self::B> { (**self).basis(n) }
            fn is_commutative(&self) -> bool { (**self).is_commutative() }
            fn show(&self, b: &Self::B) -> String { (**self).show(b) }
        }
    )*};
}
forward_dga!(&A, Arc<A>, Box<A>);

pub type Elem<A> = Lin<<A as Dga>::B, <A as Dga>::K>;

/// Linear extensions of the structure maps.
pub trait DgaExt: Dga {
    fn one(&self) -> Elem<Self> {
        Lin::basis(self.unit())
    }

    fn mul_lin(&self, x: &Elem<Self>, y: &Elem<Self>) -> Elem<Self> {
        x.bilinear(y, |a, b| self.mul(a, b))
    }

    /// Left-to-right product of a list of elements.
    fn mul_all(&self, xs: &[Elem<Self>]) -> Elem<Self> {
        let mut acc = self.one();
        for x in xs {
            acc = self.mul_lin(&acc, x);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    fn d_lin(&self, x: &Elem<Self>) -> Elem<Self> {
        x.map(|b| self.d(b))
    }

    fn augmentation(&self, x: &Elem<Self>) -> Self::K {
        x.coeff(&self.unit())
    }

    /// Projection onto the augmentation ideal.
    fn reduce(&self, x: &Elem<Self>) -> Elem<Self> {
        let u = self.unit();
        x.iter()
            .filter(|(b, _)| **b != u)
            .map(|(b, c)| (b.clone(), c.clone()))
            .collect()
    }

    /// Degree of a homogeneous element (`None` for zero or inhomogeneous input).
    fn degree_of(&self, x: &Elem<Self>) -> Option<i32> {
        let mut it = x.keys().map(|b| self.degree(b));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    fn show_lin(&self, x: &Elem<Self>) -> String {
        show_terms(x, |b| self.show(b))
    }
}
impl<A: Dga + ?Sized> DgaExt for A {}

/// Formats a linear combination with a custom basis printer, in basis order.
pub fn show_terms<B: Key, K: Field>(x: &Lin<B, K>, show: impl Fn(&B) -> String) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (b, c)) in x.iter().enumerate() {
        let c = c.to_string();
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, c),
        };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            out.push_str(&mag);
            out.push(' ');
        }
        out.push_str(&show(b));
    }
    out
}

/// Truncation for enumerations of infinite-dimensional objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_degree: i32,
    pub max_length: usize,
}

impl Bounds {
    pub const fn new(max_degree: i32, max_length: usize) -> Bounds {
        Bounds {
            max_degree,
            max_length,
        }
    }
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds {
            max_degree: 12,
            max_length: 6,
        }
    }
}

/// One term of an iterated reduced coproduct: `(odd, pieces)`.
pub type Decomposition<B> = (bool, Vec<B>);

/// A coaugmented, cocomplete DGC with a homogeneous basis.
pub trait Dgc: Send + Sync {
    type K: Field;
    type B: Key;

    fn degree(&self, b: &Self::B) -> i32;
    /// Basis element spanning the image of the coaugmentation.
    fn counit_basis(&self) -> Self::B;
    fn d(&self, x: &Self::B) -> Lin<Self::B, Self::K>;
    fn coproduct(&self, x: &Self::B) -> Lin<(Self::B, Self::B), Self::K>;
    /// Filtration measuring cocompleteness: `Δ̄^{(n)}` kills elements of length < n.
    fn length(&self, x: &Self::B) -> usize;
    /// All basis elements within the bounds.
    fn basis(&self, bounds: Bounds) -> Vec<Self::B>;

    fn counit(&self, x: &Self::B) -> Self::K {
        if *x == self.counit_basis() {
            Self::K::one()
        } else {
            Self::K::zero()
        }
    }

    /// All ordered decompositions `x ↦ ± x_1 ⊗ … ⊗ x_n` (n ≥ 1) of the iterated
    /// reduced coproduct, pieces taken from the coaugmentation coideal.
    fn decompositions(&self, x: &Self::B) -> Vec<Decomposition<Self::B>> {
        let u = self.counit_basis();
        if *x == u {
            return vec![];
        }
        let mut out = vec![(false, vec![x.clone()])];
        for ((l, r), c) in self.coproduct(x).iter() {
            if *l == u || *r == u {
                continue;
            }
            let odd = !c.is_one();
            debug_assert!(c.is_one() || (-c.clone()).is_one());
            for (o2, mut rest) in self.decompositions(r) {
                let mut pieces = vec![l.clone()];
                pieces.append(&mut rest);
                out.push((odd ^ o2, pieces));
            }
        }
        out
    }
}

macro_rules! forward_dgc {
    ($($ptr:ty),*) => {$(
        impl<C: Dgc + ?Sized> Dgc for $ptr {
            type K = C::K;
            type B = C::B;
            fn degree(&self, b: &Self::B) -> i32 { (**self).degree(b) }
            fn counit_basis(&self) -> Self::B { (**self).counit_basis() }
            fn d(&self, x: &Self::B) -> Lin<Self::B, Self::K> { (**self).d(x) }
            fn coproduct(&self, x: &Self::B) -> Lin<(Self::B, Self::B), Self::K> { (**self).coproduct(x) }
            fn length(&self, x: &Self::B) -> usize { (**self).length(x) }
            fn basis(&self, bounds: Bounds) -> Vec<Self::B> { (**self).basis(bounds) }
            fn decompositions(&self, x: &Self::B) -> Vec<Decomposition<Self::B>> { (**self).decompositions(x) }
        }
    )*};
}
forward_dgc!(&C, Arc<C>, Box<C>);

pub type CoElem<C> = Lin<<C as Dgc>::B, <C as Dgc>::K>;

pub trait DgcExt: Dgc {
    fn d_lin(&self, x: &CoElem<Self>) -> CoElem<Self> {
        x.map(|b| self.d(b))
    }
    fn coproduct_lin(&self, x: &CoElem<Self>) -> Lin<(Self::B, Self::B), Self::K> {
        x.map(|b| self.coproduct(b))
    }
}
impl<C: Dgc + ?Sized> DgcExt for C {}

/// A homogeneous linear map between based graded modules, given on basis elements.
pub struct LinMap<'a, S, T, K> {
    pub degree: i32,
    f: Arc<dyn Fn(&S) -> Lin<T, K> + Send + Sync + 'a>,
}

impl<S, T, K> Clone for LinMap<'_, S, T, K> {
    fn clone(&self) -> Self {
        LinMap {
            degree: self.degree,
            f: self.f.clone(),
        }
    }
}

impl<S, T, K> fmt::Debug for LinMap<'_, S, T, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinMap(degree {})", self.degree)
    }
}

impl<'a, S: Key, T: Key, K: Field> LinMap<'a, S, T, K> {
    pub fn new(degree: i32, f: impl Fn(&S) -> Lin<T, K> + Send + Sync + 'a) -> Self {
        LinMap {
            degree,
            f: Arc::new(f),
        }
    }

    pub fn zero(degree: i32) -> Self {
        LinMap::new(degree, |_| Lin::zero())
    }

    pub fn apply(&self, x: &S) -> Lin<T, K> {
        (self.f)(x)
    }

    pub fn apply_lin(&self, x: &Lin<S, K>) -> Lin<T, K> {
        x.map(|b| self.apply(b))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            self.degree, other.degree,
            "adding maps of different degrees"
        );
        let (f, g) = (self.clone(), other.clone());
        LinMap::new(self.degree, move |x| {
            let mut r = f.apply(x);
            r.add_lin(&g.apply(x));
            r
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-K::one()))
    }

    pub fn scale(&self, c: K) -> Self {
        let f = self.clone();
        LinMap::new(self.degree, move |x| f.apply(x).scaled(&c))
    }

    /// `self ∘ other`.
    pub fn compose<R: Key>(&self, other: &LinMap<'a, R, S, K>) -> LinMap<'a, R, T, K> {
        let (f, g) = (self.clone(), other.clone());
        LinMap::new(self.degree + other.degree, move |x| {
            f.apply_lin(&g.apply(x))
        })
    }
}

/// An element of the convolution algebra `Hom(C, A)`.
pub type Hom<'a, C, A> = LinMap<'a, <C as Dgc>::B, <A as Dga>::B, <A as Dga>::K>;

/// `Df = d_A f − (−1)^{|f|} f d_C`.
pub fn hom_differential<'a, C, A>(c: &'a C, a: &'a A, f: &Hom<'a, C, A>) -> Hom<'a, C, A>
where
    C: Dgc<K = A::K>,
    A: Dga,
{
    let f = f.clone();
    let deg = f.degree;
    LinMap::new(deg + 1, move |x| {
        let mut r = a.d_lin(&f.apply(x));
        r.add_signed(&f.apply_lin(&c.d(x)), deg & 1 == 0);
        r
    })
}

/// Cup product `μ_A (f ⊗ g) Δ_C`.
pub fn cup<'a, C, A>(c: &'a C, a: &'a A, f: &Hom<'a, C, A>, g: &Hom<'a, C, A>) -> Hom<'a, C, A>
where
    C: Dgc<K = A::K>,
    A: Dga,
{
    let (f, g) = (f.clone(), g.clone());
    LinMap::new(f.degree + g.degree, move |x| {
        let mut out = Lin::zero();
        for ((l, r), coef) in c.coproduct(x).iter() {
            let fl = f.apply(l);
            if fl.is_zero() {
                continue;
            }
            let gr = g.apply(r);
            if gr.is_zero() {
                continue;
            }
            let odd = (g.degree * c.degree(l)) & 1 != 0;
            let prod = a.mul_lin(&fl, &gr);
            out.add_scaled(&prod, &(coef.clone() * A::K::sign(odd)));
        }
        out
    })
}

/// The cup unit `η_A ε_C`.
pub fn cup_unit<'a, C, A>(c: &'a C, a: &'a A) -> Hom<'a, C, A>
where
    C: Dgc<K = A::K>,
    A: Dga,
{
    LinMap::new(0, move |x| {
        let e = c.counit(x);
        Lin::term(a.unit(), e)
    })
}

/// Cup inverse of a degree-0 map with `h η = η`, via the geometric series
/// `Σ_ℓ (ηε − h)^{∪ℓ}`, which terminates on each element by cocompleteness.
pub fn cup_inverse<'a, C, A>(c: &'a C, a: &'a A, h: &Hom<'a, C, A>) -> Result<Hom<'a, C, A>, String>
where
    C: Dgc<K = A::K>,
    A: Dga,
{
    if h.degree != 0 {
        return Err(format!(
            "cup inverse needs a degree-0 map, got degree {}",
            h.degree
        ));
    }
    let u = c.counit_basis();
    if h.apply(&u) != a.one() {
        return Err("cup inverse needs h∘η = η".into());
    }
    let h = h.clone();
    Ok(LinMap::new(0, move |x| {
        let mut out = Lin::term(a.unit(), c.counit(x));
        // (ηε − h) vanishes on the coaugmentation, so only reduced decompositions contribute
        for (odd, pieces) in c.decompositions(x) {
            let mut acc = a.one();
            for p in &pieces {
                acc = a.mul_lin(&acc, &h.apply(p).negated());
                if acc.is_zero() {
                    break;
                }
            }
            out.add_signed(&acc, odd);
        }
        out
    }))
}

/// Compares two maps on a list of basis elements; returns the first mismatch.
pub fn first_difference<S: Key, T: Key, K: Field>(
    f: &LinMap<'_, S, T, K>,
    g: &LinMap<'_, S, T, K>,
    basis: &[S],
) -> Option<(S, Lin<T, K>, Lin<T, K>)> {
    for x in basis {
        let (l, r) = (f.apply(x), g.apply(x));
        if l != r {
            return Some((x.clone(), l, r));
        }
    }
    None
}

/// Tensor product of two DGAs with the Koszul-signed product
/// `(a⊗a')(b⊗b') = (−1)^{|a'||b|} ab⊗a'b'`.
#[derive(Clone, Debug)]
pub struct TensorDga<A1, A2> {
    pub left: A1,
    pub right: A2,
}

impl<A1: Dga, A2: Dga<K = A1::K>> TensorDga<A1, A2> {
    pub fn new(left: A1, right: A2) -> Self {
        TensorDga { left, right }
    }

    /// `a ↦ a ⊗ 1`.
    pub fn inl(&self, a: &A1::B) -> (A1::B, A2::B) {
        (a.clone(), self.right.unit())
    }

    /// `b ↦ 1 ⊗ b`.
    pub fn inr(&self, b: &A2::B) -> (A1::B, A2::B) {
        (self.left.unit(), b.clone())
    }
}

pub fn tensor_lin<X: Key, Y: Key, K: Field>(x: &Lin<X, K>, y: &Lin<Y, K>) -> Lin<(X, Y), K> {
    x.bilinear(y, |a, b| Lin::basis((a.clone(), b.clone())))
}

impl<A1: Dga, A2: Dga<K = A1::K>> Dga for TensorDga<A1, A2> {
    type K = A1::K;
    type B = (A1::B, A2::B);

    fn degree(&self, b: &Self::B) -> i32 {
        self.left.degree(&b.0) + self.right.degree(&b.1)
    }
    fn unit(&self) -> Self::B {
        (self.left.unit(), self.right.unit())
    }
    fn mul(&self, x: &Self::B, y: &Self::B) -> Lin<Self::B, Self::K> {
        let odd = (self.right.degree(&x.1) * self.left.degree(&y.0)) & 1 != 0;
        let l = self.left.mul(&x.0, &y.0);
        if l.is_zero() {
            return Lin::zero();
        }
        let r = self.right.mul(&x.1, &y.1);
        let t = tensor_lin(&l, &r);
        if odd {
            t.negated()
        } else {
            t
        }
    }
    fn d(&self, x: &Self::B) -> Lin<Self::B, Self::K> {
        let mut out = tensor_lin(&self.left.d(&x.0), &Lin::basis(x.1.clone()));
        let odd = self.left.degree(&x.0) & 1 != 0;
        out.add_signed(
            &tensor_lin(&Lin::basis(x.0.clone()), &self.right.d(&x.1)),
            odd,
        );
        out
    }
    fn basis(&self, n: i32) -> Vec<Self::B> {
        let mut out = Vec::new();
        for i in 0..=n {
            let l = self.left.basis(i);
            if l.is_empty() {
                continue;
            }
            let r = self.right.basis(n - i);
            for a in &l {
                for b in &r {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }
    fn is_commutative(&self) -> bool {
        self.left.is_commutative() && self.right.is_commutative()
    }
    fn show(&self, b: &Self::B) -> String {
        format!("{}⊗{}", self.left.show(&b.0), self.right.show(&b.1))
    }
}

/// `(f ⊗ g)(x ⊗ y) = (−1)^{|g||x|} f(x) ⊗ g(y)`.
pub fn tensor_map<'a, X: Key, Y: Key, X2: Key, Y2: Key, K: Field>(
    f: &LinMap<'a, X, X2, K>,
    g: &LinMap<'a, Y, Y2, K>,
    degree_of_x: impl Fn(&X) -> i32 + Send + Sync + 'a,
) -> LinMap<'a, (X, Y), (X2, Y2), K> {
    let (f, g) = (f.clone(), g.clone());
    LinMap::new(f.degree + g.degree, move |(x, y)| {
        let odd = (g.degree * degree_of_x(x)) & 1 != 0;
        let t = tensor_lin(&f.apply(x), &g.apply(y));
        if odd {
            t.negated()
        } else {
            t
        }
    })
}

/// Outcome of an exhaustive identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Pass {
        checked: usize,
    },
    Fail {
        at: String,
        lhs: String,
        rhs: String,
    },
}

impl Check {
    pub fn passed(&self) -> bool {
        matches!(self, Check::Pass { .. })
    }

    /// Runs `test` on every item; `test` returns `(lhs, rhs)` which must agree.
    pub fn run<X, B: Key, K: Field>(
        items: impl IntoIterator<Item = X>,
        show_item: impl Fn(&X) -> String,
        show: impl Fn(&Lin<B, K>) -> String,
        mut test: impl FnMut(&X) -> (Lin<B, K>, Lin<B, K>),
    ) -> Check {
        let mut n = 0;
        for x in items {
            let (l, r) = test(&x);
            if l != r {
                return Check::Fail {
                    at: show_item(&x),
                    lhs: show(&l),
                    rhs: show(&r),
                };
            }
            n += 1;
        }
        Check::Pass { checked: n }
    }

    pub fn and(self, other: impl FnOnce() -> Check) -> Check {
        match self {
            Check::Pass { checked } => match other() {
                Check::Pass { checked: m } => Check::Pass {
                    checked: checked + m,
                },
                f => f,
            },
            f => f,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Pass { checked } => write!(f, "pass ({checked} cases)"),
            Check::Fail { at, lhs, rhs } => write!(f, "FAIL at {at}: {lhs} != {rhs}"),
        }
    }
}

/// [`check_dga_axioms`] plus connectivity: degree 0 is spanned by the unit.
pub fn check_dga<A: Dga>(a: &A, max_degree: i32) -> Check {
    check_dga_axioms(a, max_degree).and(|| {
        let deg0 = a.basis(0);
        let ok = deg0.len() == 1 && a.is_unit(&deg0[0]) && a.d(&deg0[0]).is_zero();
        if ok {
            Check::Pass { checked: 1 }
        } else {
            Check::Fail {
                at: "degree 0".into(),
                lhs: format!("{} basis elements", deg0.len()),
                rhs: "k·1".into(),
            }
        }
    })
}

/// DGA axioms on the basis up to `max_degree`: d² = 0, Leibniz, associativity, unit.
pub fn check_dga_axioms<A: Dga>(a: &A, max_degree: i32) -> Check {
    let basis: Vec<A::B> = (0..=max_degree).flat_map(|n| a.basis(n)).collect();
    let show = |x: &Elem<A>| a.show_lin(x);
    let d2 = Check::run(
        basis.iter(),
        |b| a.show(b),
        show,
        |b| (a.d_lin(&a.d(b)), Lin::zero()),
    );
    d2.and(|| {
        let pairs = basis
            .iter()
            .flat_map(|x| basis.iter().map(move |y| (x, y)))
            .filter(|(x, y)| a.degree(x) + a.degree(y) < max_degree);
        Check::run(
            pairs,
            |(x, y)| format!("{} , {}", a.show(x), a.show(y)),
            show,
            |(x, y)| {
                let lhs = a.d_lin(&a.mul(x, y));
                let mut rhs = a.mul_lin(&a.d(x), &Lin::basis((*y).clone()));
                rhs.add_signed(
                    &a.mul_lin(&Lin::basis((*x).clone()), &a.d(y)),
                    a.degree(x) & 1 != 0,
                );
                (lhs, rhs)
            },
        )
    })
    .and(|| {
        let triples = basis
            .iter()
            .flat_map(|x| basis.iter().map(move |y| (x, y)))
            .flat_map(|(x, y)| basis.iter().map(move |z| (x, y, z)))
            .filter(|(x, y, z)| a.degree(x) + a.degree(y) + a.degree(z) <= max_degree);
        Check::run(
            triples,
            |(x, y, z)| format!("{} , {} , {}", a.show(x), a.show(y), a.show(z)),
            show,
            |(x, y, z)| {
                let (x, y, z) = (
                    Lin::basis((*x).clone()),
                    Lin::basis((*y).clone()),
                    Lin::basis((*z).clone()),
                );
                (
                    a.mul_lin(&a.mul_lin(&x, &y), &z),
                    a.mul_lin(&x, &a.mul_lin(&y, &z)),
                )
            },
        )
    })
    .and(|| {
        Check::run(
            basis.iter(),
            |b| a.show(b),
            show,
            |b| {
                let x = Lin::basis((*b).clone());
                let l = a.mul_lin(&a.one(), &x);
                let r = a.mul_lin(&x, &a.one());
                let mut both = l.clone();
                both.add_lin(&r);
                (both, x.scaled(&A::K::from_i64(2)))
            },
        )
    })
}

/// DGC axioms on the basis within `bounds`: d² = 0, coassociativity, counit laws,
/// coderivation property, cocompleteness.
pub fn check_dgc<C: Dgc>(c: &C, bounds: Bounds) -> Check {
    let basis = c.basis(bounds);
    let show_b = |b: &C::B| format!("{b:?}");
    let d2 = Check::run(
        basis.iter(),
        |b| show_b(b),
        |x| format!("{x:?}"),
        |b| (c.d_lin(&c.d(b)), Lin::zero()),
    );
    d2.and(|| {
        Check::run(
            basis.iter(),
            |b| show_b(b),
            |x| format!("{x:?}"),
            |b| {
                let delta = c.coproduct(b);
                let lhs: Lin<(C::B, (C::B, C::B)), C::K> = delta.map(|(l, r)| {
                    c.coproduct(r)
                        .relabel(|(m, n)| (l.clone(), (m.clone(), n.clone())))
                });
                let rhs: Lin<(C::B, (C::B, C::B)), C::K> = delta.map(|(l, r)| {
                    c.coproduct(l)
                        .relabel(|(m, n)| (m.clone(), (n.clone(), r.clone())))
                });
                (lhs, rhs)
            },
        )
    })
    .and(|| {
        Check::run(
            basis.iter(),
            |b| show_b(b),
            |x| format!("{x:?}"),
            |b| {
                let delta = c.coproduct(b);
                let mut left = Lin::zero();
                let mut right = Lin::zero();
                for ((l, r), k) in delta.iter() {
                    left.add_term(r.clone(), c.counit(l) * k.clone());
                    right.add_term(l.clone(), c.counit(r) * k.clone());
                }
                let mut both = left;
                both.add_lin(&right);
                (both, Lin::term((*b).clone(), C::K::from_i64(2)))
            },
        )
    })
    .and(|| {
        Check::run(
            basis.iter(),
            |b| show_b(b),
            |x| format!("{x:?}"),
            |b| {
                let lhs = c.coproduct_lin(&c.d(b));
                let rhs = c.coproduct(b).map(|(l, r)| {
                    let mut t = tensor_lin(&c.d(l), &Lin::basis(r.clone()));
                    t.add_signed(
                        &tensor_lin(&Lin::basis(l.clone()), &c.d(r)),
                        c.degree(l) & 1 != 0,
                    );
                    t
                });
                (lhs, rhs)
            },
        )
    })
    .and(|| {
        Check::run(
            basis.iter(),
            |b| show_b(b),
            |x: &Lin<usize, C::K>| format!("{x:?}"),
            |b| {
                // every decomposition has at most `length` pieces
                let n = c.length(b);
                let bad = c
                    .decompositions(b)
                    .iter()
                    .filter(|(_, p)| p.len() > n)
                    .count();
                (Lin::term(0usize, C::K::from_i64(bad as i64)), Lin::zero())
            },
        )
    })
}

/// DGC homotopy conditions for `H: C → C'` between DGC maps `F`, `G`:
/// `εH = 0`, `Hη = 0`, `DH = G − F`, `ΔH = (F⊗H + H⊗G)Δ`.
pub fn dgc_homotopy_check<'a, C, D>(
    c: &'a C,
    target: &'a D,
    h: &LinMap<'a, C::B, D::B, C::K>,
    f: &LinMap<'a, C::B, D::B, C::K>,
    g: &LinMap<'a, C::B, D::B, C::K>,
    bounds: Bounds,
) -> Check
where
    C: Dgc,
    D: Dgc<K = C::K>,
{
    let basis = c.basis(bounds);
    let dbg = |x: &Lin<D::B, C::K>| format!("{x:?}");
    let u = c.counit_basis();
    let mut counit = Lin::<(), C::K>::zero();
    for b in &basis {
        for (y, k) in h.apply(b).iter() {
            counit.add_term((), target.counit(y) * k.clone());
        }
    }
    if !counit.is_zero() || !h.apply(&u).is_zero() {
        return Check::Fail {
            at: "unit conditions".into(),
            lhs: format!("{counit:?}"),
            rhs: "0".into(),
        };
    }
    let hd = h.degree;
    Check::run(
        basis.iter(),
        |b| format!("{b:?}"),
        dbg,
        |b| {
            let mut lhs = target.d_lin(&h.apply(b));
            lhs.add_signed(&h.apply_lin(&c.d(b)), hd & 1 == 0);
            let mut rhs = g.apply(b);
            rhs.sub_lin(&f.apply(b));
            (lhs, rhs)
        },
    )
    .and(|| {
        Check::run(
            basis.iter(),
            |b| format!("{b:?}"),
            |x| format!("{x:?}"),
            |b| {
                let lhs = target.coproduct_lin(&h.apply(b));
                let mut rhs = Lin::zero();
                for ((l, r), k) in c.coproduct(b).iter() {
                    let fh = tensor_lin(&f.apply(l), &h.apply(r));
                    rhs.add_scaled(&fh, &(k.clone() * C::K::sign((hd * c.degree(l)) & 1 != 0)));
                    let hg = tensor_lin(&h.apply(l), &g.apply(r));
                    rhs.add_scaled(&hg, k);
                }
                (lhs, rhs)
            },
        )
    })
}
