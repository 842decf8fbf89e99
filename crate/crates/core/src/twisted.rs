//! Cap products, two-sided twisted tensor products `A′ ⊗_{t′} C ⊗_{t″} A″`, the
//! two-sided bar construction, and maps between such complexes.

use std::fmt;

use crate::bar::{check_cochain_homotopy, extend_to_dgc_map, Bar, Word};
use crate::dg::{
    cup, cup_inverse, hom_differential, Bounds, Check, Dga, DgaExt, Dgc, Elem, Hom, LinMap,
};
use crate::graded::{Key, Lin};
use crate::scalar::Field;

/// Basis element `a′ ⊗ c ⊗ a″`.
pub type Triple<X, C, Y> = (X, C, Y);

#[derive(Debug, thiserror::Error)]
pub enum TwistedError {
    #[error("{0} is not a twisting cochain: {1}")]
    NotTwisting(&'static str, Check),
    #[error("the square of coalgebra maps does not commute on the {side} side: {check}")]
    NotCommuting { side: &'static str, check: Check },
    #[error("{0} homotopy condition fails: {1}")]
    NotHomotopy(&'static str, Check),
    #[error("{0}")]
    Other(String),
}

/// `δ^R_φ(x ⊗ y) = Σ (−1)^{|φ||x_{(1)}|} x_{(1)} ⊗ φ(x_{(2)}) y` on `C ⊗ A`.
pub fn cap_right<C, A>(
    c: &C,
    a: &A,
    phi: &Hom<'_, C, A>,
    x: &C::B,
    y: &A::B,
) -> Lin<(C::B, A::B), A::K>
where
    C: Dgc<K = A::K>,
    A: Dga,
{
    let mut out = Lin::zero();
    for ((x1, x2), k) in c.coproduct(x).iter() {
        let v = phi.apply(x2);
        if v.is_zero() {
            continue;
        }
        let prod = a.mul_lin(&v, &Lin::basis(y.clone()));
        let odd = (phi.degree * c.degree(x1)) & 1 != 0;
        for (p, kp) in prod.iter() {
            out.add_term(
                (x1.clone(), p.clone()),
                k.clone() * kp.clone() * A::K::sign(odd),
            );
        }
    }
    out
}

/// `δ^L_φ(y ⊗ x) = Σ (−1)^{|φ||y|} y φ(x_{(1)}) ⊗ x_{(2)}` on `A ⊗ C`.
pub fn cap_left<C, A>(
    c: &C,
    a: &A,
    phi: &Hom<'_, C, A>,
    y: &A::B,
    x: &C::B,
) -> Lin<(A::B, C::B), A::K>
where
    C: Dgc<K = A::K>,
    A: Dga,
{
    let mut out = Lin::zero();
    let odd = (phi.degree * a.degree(y)) & 1 != 0;
    for ((x1, x2), k) in c.coproduct(x).iter() {
        let v = phi.apply(x1);
        if v.is_zero() {
            continue;
        }
        for (p, kp) in a.mul_lin(&Lin::basis(y.clone()), &v).iter() {
            out.add_term(
                (p.clone(), x2.clone()),
                k.clone() * kp.clone() * A::K::sign(odd),
            );
        }
    }
    out
}

fn cap_right_lin<C, A>(
    c: &C,
    a: &A,
    phi: &Hom<'_, C, A>,
    z: &Lin<(C::B, A::B), A::K>,
) -> Lin<(C::B, A::B), A::K>
where
    C: Dgc<K = A::K>,
    A: Dga,
{
    z.map(|(x, y)| cap_right(c, a, phi, x, y))
}

fn cap_left_lin<C, A>(
    c: &C,
    a: &A,
    phi: &Hom<'_, C, A>,
    z: &Lin<(A::B, C::B), A::K>,
) -> Lin<(A::B, C::B), A::K>
where
    C: Dgc<K = A::K>,
    A: Dga,
{
    z.map(|(y, x)| cap_left(c, a, phi, y, x))
}

/// `δ^R_{φ∪ψ} = δ^R_φ δ^R_ψ` on `C ⊗ A` for the given elements.
pub fn check_cap_right_multiplicative<'a, C, A>(
    c: &'a C,
    a: &'a A,
    phi: &Hom<'a, C, A>,
    psi: &Hom<'a, C, A>,
    elements: &[(C::B, A::B)],
) -> Check
where
    C: Dgc<K = A::K>,
    A: Dga,
{
    let both = cup(c, a, phi, psi);
    Check::run(
        elements.iter(),
        |e| format!("{e:?}"),
        |z| format!("{z:?}"),
        |(x, y)| {
            (
                cap_right(c, a, &both, x, y),
                cap_right_lin(c, a, phi, &cap_right(c, a, psi, x, y)),
            )
        },
    )
}

/// `δ^L_φ δ^L_ψ = (−1)^{|φ||ψ|} δ^L_{ψ∪φ}` on `A ⊗ C` for the given elements.
pub fn check_cap_left_antimultiplicative<'a, C, A>(
    c: &'a C,
    a: &'a A,
    phi: &Hom<'a, C, A>,
    psi: &Hom<'a, C, A>,
    elements: &[(A::B, C::B)],
) -> Check
where
    C: Dgc<K = A::K>,
    A: Dga,
{
    let both = cup(c, a, psi, phi);
    let odd = (phi.degree * psi.degree) & 1 != 0;
    Check::run(
        elements.iter(),
        |e| format!("{e:?}"),
        |z| format!("{z:?}"),
        |(y, x)| {
            let lhs = cap_left_lin(c, a, phi, &cap_left(c, a, psi, y, x));
            let mut rhs = Lin::zero();
            rhs.add_signed(&cap_left(c, a, &both, y, x), odd);
            (lhs, rhs)
        },
    )
}

/// `A′ ⊗_{t′} C ⊗_{t″} A″` with differential `d_⊗ + δ^L_{t′} − δ^R_{t″}`.
///
/// The outer algebras are stored inside their bar constructions so that coalgebra
/// maps `C → B A′` can be rebuilt from `t′` on demand.
pub struct Twisted<'a, L: Dga, C: Dgc, R: Dga> {
    pub left: Bar<L>,
    pub coalg: C,
    pub right: Bar<R>,
    pub t_left: LinMap<'a, C::B, L::B, C::K>,
    pub t_right: LinMap<'a, C::B, R::B, C::K>,
}

/// The two-sided bar construction `B(A′, A, A″)`.
pub type TwoSidedBar<'a, L, A, R> = Twisted<'a, L, Bar<A>, R>;

pub type TwistedElem<L, C, R> =
    Lin<Triple<<L as Dga>::B, <C as Dgc>::B, <R as Dga>::B>, <C as Dgc>::K>;

impl<L: Dga, C: Dgc, R: Dga> fmt::Debug for Twisted<'_, L, C, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Twisted(..)")
    }
}

impl<'a, L, C, R> Twisted<'a, L, C, R>
where
    C: Dgc,
    L: Dga<K = C::K>,
    R: Dga<K = C::K>,
{
    pub fn new(
        left: L,
        coalg: C,
        right: R,
        t_left: LinMap<'a, C::B, L::B, C::K>,
        t_right: LinMap<'a, C::B, R::B, C::K>,
    ) -> Self {
        Twisted {
            left: Bar::new(left),
            coalg,
            right: Bar::new(right),
            t_left,
            t_right,
        }
    }

    pub fn left_alg(&self) -> &L {
        &self.left.alg
    }

    pub fn right_alg(&self) -> &R {
        &self.right.alg
    }

    /// Validates both twisting cochains within `bounds`.
    pub fn validated(self, bounds: Bounds) -> Result<Self, TwistedError> {
        let l = crate::bar::is_twisting_cochain(&self.coalg, &self.left.alg, &self.t_left, bounds);
        if !l.passed() {
            return Err(TwistedError::NotTwisting("t′", l));
        }
        let r =
            crate::bar::is_twisting_cochain(&self.coalg, &self.right.alg, &self.t_right, bounds);
        if !r.passed() {
            return Err(TwistedError::NotTwisting("t″", r));
        }
        Ok(self)
    }

    pub fn degree(&self, (x, c, y): &Triple<L::B, C::B, R::B>) -> i32 {
        self.left.alg.degree(x) + self.coalg.degree(c) + self.right.alg.degree(y)
    }

    pub fn length(&self, t: &Triple<L::B, C::B, R::B>) -> usize {
        self.coalg.length(&t.1)
    }

    pub fn d(&self, t: &Triple<L::B, C::B, R::B>) -> TwistedElem<L, C, R> {
        let (x, c, y) = t;
        let (xd, cd) = (self.left.alg.degree(x), self.coalg.degree(c));
        let mut out = Lin::zero();
        for (x2, k) in self.left.alg.d(x).iter() {
            out.add_term((x2.clone(), c.clone(), y.clone()), k.clone());
        }
        for (c2, k) in self.coalg.d(c).iter() {
            out.add_term(
                (x.clone(), c2.clone(), y.clone()),
                k.clone() * C::K::sign(xd & 1 != 0),
            );
        }
        for (y2, k) in self.right.alg.d(y).iter() {
            out.add_term(
                (x.clone(), c.clone(), y2.clone()),
                k.clone() * C::K::sign((xd + cd) & 1 != 0),
            );
        }
        for ((x2, c2), k) in cap_left(&self.coalg, &self.left.alg, &self.t_left, x, c).iter() {
            out.add_term((x2.clone(), c2.clone(), y.clone()), k.clone());
        }
        // −(id ⊗ δ^R): the cap passes a′
        let odd = xd & 1 == 0;
        for ((c2, y2), k) in cap_right(&self.coalg, &self.right.alg, &self.t_right, c, y).iter() {
            out.add_term(
                (x.clone(), c2.clone(), y2.clone()),
                k.clone() * C::K::sign(odd),
            );
        }
        out
    }

    pub fn d_lin(&self, z: &TwistedElem<L, C, R>) -> TwistedElem<L, C, R> {
        z.map(|t| self.d(t))
    }

    /// Basis elements of total degree exactly `n` with coalgebra length at most `max_length`.
    pub fn basis_in_degree(&self, n: i32, max_length: usize) -> Vec<Triple<L::B, C::B, R::B>> {
        let cs = self.coalg.basis(Bounds::new(n, max_length));
        let mut out = Vec::new();
        for i in 0..=n {
            let ls = self.left.alg.basis(i);
            if ls.is_empty() {
                continue;
            }
            for c in &cs {
                let j = self.coalg.degree(c);
                if i + j > n {
                    continue;
                }
                for y in self.right.alg.basis(n - i - j) {
                    for x in &ls {
                        out.push((x.clone(), c.clone(), y.clone()));
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn basis(&self, bounds: Bounds) -> Vec<Triple<L::B, C::B, R::B>> {
        (0..=bounds.max_degree)
            .flat_map(|n| self.basis_in_degree(n, bounds.max_length))
            .collect()
    }

    pub fn show(&self, (x, c, y): &Triple<L::B, C::B, R::B>) -> String
    where
        C: ShowBasis,
    {
        format!(
            "{}{}{}",
            self.left.alg.show(x),
            self.coalg.show_basis(c),
            self.right.alg.show(y)
        )
    }

    pub fn show_lin(&self, z: &TwistedElem<L, C, R>) -> String
    where
        C: ShowBasis,
    {
        crate::dg::show_terms(z, |t| self.show(t))
    }

    /// `d² = 0` on the basis within `bounds`.
    pub fn check_d_squared(&self, bounds: Bounds) -> Check
    where
        C: ShowBasis,
    {
        Check::run(
            self.basis(bounds),
            |t| self.show(t),
            |z| self.show_lin(z),
            |t| (self.d_lin(&self.d(t)), Lin::zero()),
        )
    }

    /// The differential does not raise the coalgebra length.
    pub fn check_filtration(&self, bounds: Bounds) -> Check
    where
        C: ShowBasis,
    {
        Check::run(
            self.basis(bounds),
            |t| self.show(t),
            |z| self.show_lin(z),
            |t| {
                let n = self.length(t);
                let d = self.d(t);
                let too_long: TwistedElem<L, C, R> = d
                    .iter()
                    .filter(|(s, _)| self.length(s) > n)
                    .map(|(s, k)| (s.clone(), k.clone()))
                    .collect();
                (too_long, Lin::zero())
            },
        )
    }

    /// The coalgebra map `F′: C → B A′` with twisting cochain `t′`.
    pub fn left_coalgebra_map(&'a self) -> LinMap<'a, C::B, Word<L::B>, C::K> {
        extend_to_dgc_map(&self.coalg, &self.left, &self.t_left)
    }

    pub fn right_coalgebra_map(&'a self) -> LinMap<'a, C::B, Word<R::B>, C::K> {
        extend_to_dgc_map(&self.coalg, &self.right, &self.t_right)
    }
}

/// Display of coalgebra basis elements.
pub trait ShowBasis: Dgc {
    fn show_basis(&self, b: &Self::B) -> String;
}

impl<A: Dga> ShowBasis for Bar<A> {
    fn show_basis(&self, b: &Word<A::B>) -> String {
        self.show_word(b)
    }
}

impl<A: Dga, B2: Dga<K = A::K>> ShowBasis for crate::bar::BarPair<A, B2> {
    fn show_basis(&self, b: &Self::B) -> String {
        self.show(b)
    }
}

/// `f ∘ t_A` for a DGA map `f: A → T`.
pub fn strict_twisting<'a, A: Dga, T: Dga<K = A::K>>(
    f: &LinMap<'a, A::B, T::B, A::K>,
) -> LinMap<'a, Word<A::B>, T::B, A::K> {
    let f = f.clone();
    LinMap::new(1, move |w: &Word<A::B>| {
        if w.len() == 1 {
            f.apply(&w[0])
        } else {
            Lin::zero()
        }
    })
}

/// `B(A′, A, A″)` for DGA maps `f′: A → A′`, `f″: A → A″`, i.e. `t′ = f′ t_A`, `t″ = f″ t_A`.
pub fn two_sided_bar<'a, L, A, R>(
    left: L,
    mid: A,
    right: R,
    f_left: &LinMap<'a, A::B, L::B, A::K>,
    f_right: &LinMap<'a, A::B, R::B, A::K>,
) -> TwoSidedBar<'a, L, A, R>
where
    A: Dga,
    L: Dga<K = A::K>,
    R: Dga<K = A::K>,
{
    Twisted::new(
        left,
        Bar::new(mid),
        right,
        strict_twisting::<A, L>(f_left),
        strict_twisting::<A, R>(f_right),
    )
}

/// `D F = d F − F d = 0` on the source basis within `bounds`.
pub fn check_cochain_map<L0, C0, R0, L1, C1, R1>(
    source: &Twisted<'_, L0, C0, R0>,
    target: &Twisted<'_, L1, C1, R1>,
    f: &LinMap<'_, Triple<L0::B, C0::B, R0::B>, Triple<L1::B, C1::B, R1::B>, C0::K>,
    bounds: Bounds,
) -> Check
where
    C0: Dgc + ShowBasis,
    L0: Dga<K = C0::K>,
    R0: Dga<K = C0::K>,
    C1: Dgc<K = C0::K> + ShowBasis,
    L1: Dga<K = C0::K>,
    R1: Dga<K = C0::K>,
{
    Check::run(
        source.basis(bounds),
        |t| source.show(t),
        |z| target.show_lin(z),
        |t| (target.d_lin(&f.apply(t)), f.apply_lin(&source.d(t))),
    )
}

/// `f′ ⊗ G ⊗ f″` on basis triples.
pub fn tensor_triple_map<'a, X0: Key, C0: Key, Y0: Key, X1: Key, C1: Key, Y1: Key, K: Field>(
    f_left: &LinMap<'a, X0, X1, K>,
    g: &LinMap<'a, C0, C1, K>,
    f_right: &LinMap<'a, Y0, Y1, K>,
) -> LinMap<'a, Triple<X0, C0, Y0>, Triple<X1, C1, Y1>, K> {
    assert!(
        f_left.degree == 0 && g.degree == 0 && f_right.degree == 0,
        "tensor triple maps have degree 0"
    );
    let (fl, g, fr) = (f_left.clone(), g.clone(), f_right.clone());
    LinMap::new(0, move |(x, c, y): &Triple<X0, C0, Y0>| {
        let (a, b, e) = (fl.apply(x), g.apply(c), fr.apply(y));
        let mut out = Lin::zero();
        for (x1, k1) in a.iter() {
            for (c1, k2) in b.iter() {
                for (y1, k3) in e.iter() {
                    out.add_term(
                        (x1.clone(), c1.clone(), y1.clone()),
                        k1.clone() * k2.clone() * k3.clone(),
                    );
                }
            }
        }
        out
    })
}

/// The three coalgebra maps of a ladder `B(A′₀,A₀,A″₀) → B(A′₁,A₁,A″₁)`: the outer
/// ones by their twisting cochains `t G′`, `t G″`, the middle one as a map of words.
pub struct BarLadder<'a, L0: Dga, A0: Dga, R0: Dga, L1: Dga, A1: Dga, R1: Dga> {
    pub left: LinMap<'a, Word<L0::B>, L1::B, A0::K>,
    pub mid: LinMap<'a, Word<A0::B>, Word<A1::B>, A0::K>,
    pub right: LinMap<'a, Word<R0::B>, R1::B, A0::K>,
}

/// The ladder induced by DGA maps `g′, g, g″`.
pub fn strict_ladder<'a, L0, A0, R0, L1, A1, R1>(
    mid_source: &'a Bar<A0>,
    mid_target: &'a Bar<A1>,
    g_left: &LinMap<'a, L0::B, L1::B, A0::K>,
    g: &LinMap<'a, A0::B, A1::B, A0::K>,
    g_right: &LinMap<'a, R0::B, R1::B, A0::K>,
) -> BarLadder<'a, L0, A0, R0, L1, A1, R1>
where
    A0: Dga,
    L0: Dga<K = A0::K>,
    R0: Dga<K = A0::K>,
    A1: Dga<K = A0::K> + 'a,
    L1: Dga<K = A0::K>,
    R1: Dga<K = A0::K>,
{
    BarLadder {
        left: strict_twisting::<L0, L1>(g_left),
        mid: mid_source.map(mid_target, g),
        right: strict_twisting::<R0, R1>(g_right),
    }
}

/// Checks the squares `G′F′₀ = F′₁G` and `G″F″₀ = F″₁G` on words within `bounds`,
/// comparing twisting cochains.
pub fn check_ladder<'a, L0, A0, R0, L1, A1, R1>(
    source: &'a TwoSidedBar<'a, L0, A0, R0>,
    target: &'a TwoSidedBar<'a, L1, A1, R1>,
    ladder: &BarLadder<'a, L0, A0, R0, L1, A1, R1>,
    bounds: Bounds,
) -> Result<(), TwistedError>
where
    A0: Dga,
    L0: Dga<K = A0::K>,
    R0: Dga<K = A0::K>,
    A1: Dga<K = A0::K>,
    L1: Dga<K = A0::K>,
    R1: Dga<K = A0::K>,
{
    let words = source.coalg.basis(bounds);
    let lhs = ladder.left.compose(&source.left_coalgebra_map());
    let rhs = target.t_left.compose(&ladder.mid);
    let check = Check::run(
        words.iter(),
        |w| source.coalg.show_word(w),
        |x| target.left.alg.show_lin(x),
        |w| (lhs.apply(w), rhs.apply(w)),
    );
    if !check.passed() {
        return Err(TwistedError::NotCommuting {
            side: "left",
            check,
        });
    }
    let lhs = ladder.right.compose(&source.right_coalgebra_map());
    let rhs = target.t_right.compose(&ladder.mid);
    let check = Check::run(
        words.iter(),
        |w| source.coalg.show_word(w),
        |x| target.right.alg.show_lin(x),
        |w| (lhs.apply(w), rhs.apply(w)),
    );
    if !check.passed() {
        return Err(TwistedError::NotCommuting {
            side: "right",
            check,
        });
    }
    Ok(())
}

/// The map `B(G′, G, G″) = (Υ′ ⊗ G ⊗ Υ″)(id ⊗ Δ^{(3)} ⊗ id)` with
/// `Υ′(a′ ⊗ w) = t G′([a′] · F′₀ w)` for `a′ ≠ 1` and `Υ′(1 ⊗ w) = ε(w)`, symmetrically
/// `Υ″(w ⊗ a″) = (−1)^{|w|} t G″(F″₀ w · [a″])`.
///
/// Refuses ladders failing [`check_ladder`] within `bounds`.
#[allow(clippy::type_complexity)]
pub fn bar_triple_map<'a, L0, A0, R0, L1, A1, R1>(
    source: &'a TwoSidedBar<'a, L0, A0, R0>,
    target: &'a TwoSidedBar<'a, L1, A1, R1>,
    ladder: BarLadder<'a, L0, A0, R0, L1, A1, R1>,
    bounds: Bounds,
) -> Result<
    LinMap<'a, Triple<L0::B, Word<A0::B>, R0::B>, Triple<L1::B, Word<A1::B>, R1::B>, A0::K>,
    TwistedError,
>
where
    A0: Dga,
    L0: Dga<K = A0::K>,
    R0: Dga<K = A0::K>,
    A1: Dga<K = A0::K>,
    L1: Dga<K = A0::K>,
    R1: Dga<K = A0::K>,
{
    check_ladder(source, target, &ladder, bounds)?;
    Ok(bar_triple_map_unchecked(source, target, ladder))
}

/// [`bar_triple_map`] without the commutation check.
pub fn bar_triple_map_unchecked<'a, L0, A0, R0, L1, A1, R1>(
    source: &'a TwoSidedBar<'a, L0, A0, R0>,
    target: &'a TwoSidedBar<'a, L1, A1, R1>,
    ladder: BarLadder<'a, L0, A0, R0, L1, A1, R1>,
) -> LinMap<'a, Triple<L0::B, Word<A0::B>, R0::B>, Triple<L1::B, Word<A1::B>, R1::B>, A0::K>
where
    A0: Dga,
    L0: Dga<K = A0::K>,
    R0: Dga<K = A0::K>,
    A1: Dga<K = A0::K>,
    L1: Dga<K = A0::K>,
    R1: Dga<K = A0::K>,
{
    let f_left = source.left_coalgebra_map();
    let f_right = source.right_coalgebra_map();
    let BarLadder {
        left: g_left,
        mid: g_mid,
        right: g_right,
    } = ladder;
    LinMap::new(0, move |(x, w, y): &Triple<L0::B, Word<A0::B>, R0::B>| {
        let mut out = Lin::zero();
        let n = w.len();
        for i in 0..=n {
            let upsilon_l = upsilon_left(source, target, &f_left, &g_left, x, &w[..i]);
            if upsilon_l.is_zero() {
                continue;
            }
            for j in i..=n {
                let upsilon_r = upsilon_right(source, target, &f_right, &g_right, &w[j..], y);
                if upsilon_r.is_zero() {
                    continue;
                }
                let mid = g_mid.apply(&w[i..j].to_vec());
                for (x1, k1) in upsilon_l.iter() {
                    for (m, k2) in mid.iter() {
                        for (y1, k3) in upsilon_r.iter() {
                            out.add_term(
                                (x1.clone(), m.clone(), y1.clone()),
                                k1.clone() * k2.clone() * k3.clone(),
                            );
                        }
                    }
                }
            }
        }
        out
    })
}

fn upsilon_left<'a, L0, A0, R0, L1, A1, R1>(
    source: &TwoSidedBar<'a, L0, A0, R0>,
    target: &TwoSidedBar<'a, L1, A1, R1>,
    f_left: &LinMap<'a, Word<A0::B>, Word<L0::B>, A0::K>,
    g_left: &LinMap<'a, Word<L0::B>, L1::B, A0::K>,
    x: &L0::B,
    w: &[A0::B],
) -> Elem<L1>
where
    A0: Dga,
    L0: Dga<K = A0::K>,
    R0: Dga<K = A0::K>,
    A1: Dga<K = A0::K>,
    L1: Dga<K = A0::K>,
    R1: Dga<K = A0::K>,
{
    if source.left.alg.is_unit(x) {
        return if w.is_empty() {
            target.left.alg.one()
        } else {
            Lin::zero()
        };
    }
    let words = f_left.apply(&w.to_vec());
    let mut out = Lin::zero();
    for (v, k) in words.iter() {
        let mut full = Vec::with_capacity(v.len() + 1);
        full.push(x.clone());
        full.extend_from_slice(v);
        out.add_scaled(&g_left.apply(&full), k);
    }
    out
}

fn upsilon_right<'a, L0, A0, R0, L1, A1, R1>(
    source: &TwoSidedBar<'a, L0, A0, R0>,
    target: &TwoSidedBar<'a, L1, A1, R1>,
    f_right: &LinMap<'a, Word<A0::B>, Word<R0::B>, A0::K>,
    g_right: &LinMap<'a, Word<R0::B>, R1::B, A0::K>,
    w: &[A0::B],
    y: &R0::B,
) -> Elem<R1>
where
    A0: Dga,
    L0: Dga<K = A0::K>,
    R0: Dga<K = A0::K>,
    A1: Dga<K = A0::K>,
    L1: Dga<K = A0::K>,
    R1: Dga<K = A0::K>,
{
    if source.right.alg.is_unit(y) {
        return if w.is_empty() {
            target.right.alg.one()
        } else {
            Lin::zero()
        };
    }
    let odd = source.coalg.word_degree(w) & 1 != 0;
    let words = f_right.apply(&w.to_vec());
    let mut out = Lin::zero();
    for (v, k) in words.iter() {
        let mut full = v.clone();
        full.push(y.clone());
        out.add_scaled(&g_right.apply(&full), &(k.clone() * A0::K::sign(odd)));
    }
    out
}

/// The one-sided map `B ⊗_{tF} B A → X ⊗_{tGF} B A` given by
/// `b ⊗ w ↦ Σ t G([b] · F w_{(1)}) ⊗ w_{(2)}` for `b ≠ 1` and the identity on `k ⊗ B A`;
/// the right factor is carried along.
pub fn gamma_one_sided<'a, L0, A, R, L1>(
    source: &'a TwoSidedBar<'a, L0, A, R>,
    target: &'a TwoSidedBar<'a, L1, A, R>,
    g: &LinMap<'a, Word<L0::B>, L1::B, A::K>,
) -> LinMap<'a, Triple<L0::B, Word<A::B>, R::B>, Triple<L1::B, Word<A::B>, R::B>, A::K>
where
    A: Dga,
    L0: Dga<K = A::K>,
    R: Dga<K = A::K>,
    L1: Dga<K = A::K>,
{
    let f = source.left_coalgebra_map();
    let g = g.clone();
    LinMap::new(0, move |(x, w, y): &Triple<L0::B, Word<A::B>, R::B>| {
        let mut out = Lin::zero();
        for i in 0..=w.len() {
            let u = upsilon_left(source, target, &f, &g, x, &w[..i]);
            for (x1, k) in u.iter() {
                out.add_term((x1.clone(), w[i..].to_vec(), y.clone()), k.clone());
            }
        }
        out
    })
}

/// The gauge-transformed twisting cochain `h^{∪−1} ∪ (t ∪ h − D h)`, the unique `u` with
/// `D h = t ∪ h − h ∪ u`.
pub fn gauge_transform<'a, C, A>(
    c: &'a C,
    a: &'a A,
    t: &Hom<'a, C, A>,
    h: &Hom<'a, C, A>,
) -> Result<Hom<'a, C, A>, String>
where
    C: Dgc<K = A::K>,
    A: Dga,
{
    let inv = cup_inverse(c, a, h)?;
    let inner = cup(c, a, t, h).sub(&hom_differential(c, a, h));
    Ok(cup(c, a, &inv, &inner))
}

/// `(δ^L_{h′} ⊗ id)(id ⊗ δ^R_{h″})` and its inverse built from cup-inverses, for
/// homotopies `h′: t′₀ ≃ t′₁` and `h″: t″₁ ≃ t″₀`.
#[allow(clippy::type_complexity)]
pub fn conjugation_iso<'a, L, C, R>(
    source: &'a Twisted<'a, L, C, R>,
    target: &'a Twisted<'a, L, C, R>,
    h_left: &Hom<'a, C, L>,
    h_right: &Hom<'a, C, R>,
    bounds: Bounds,
) -> Result<
    (
        LinMap<'a, Triple<L::B, C::B, R::B>, Triple<L::B, C::B, R::B>, C::K>,
        LinMap<'a, Triple<L::B, C::B, R::B>, Triple<L::B, C::B, R::B>, C::K>,
    ),
    TwistedError,
>
where
    C: Dgc,
    L: Dga<K = C::K>,
    R: Dga<K = C::K>,
{
    let c = &source.coalg;
    let check = check_cochain_homotopy(
        c,
        &source.left.alg,
        h_left,
        &source.t_left,
        &target.t_left,
        bounds,
    );
    if !check.passed() {
        return Err(TwistedError::NotHomotopy("left", check));
    }
    let check = check_cochain_homotopy(
        c,
        &source.right.alg,
        h_right,
        &target.t_right,
        &source.t_right,
        bounds,
    );
    if !check.passed() {
        return Err(TwistedError::NotHomotopy("right", check));
    }
    let inv_left = cup_inverse(c, &source.left.alg, h_left).map_err(TwistedError::Other)?;
    let inv_right = cup_inverse(c, &source.right.alg, h_right).map_err(TwistedError::Other)?;
    let forward = conjugate(source, h_left.clone(), h_right.clone());
    let backward = conjugate(source, inv_left, inv_right);
    Ok((forward, backward))
}

/// `a′ ⊗ x ⊗ a″ ↦ Σ a′ h′(x_{(1)}) ⊗ x_{(2)} ⊗ h″(x_{(3)}) a″` for degree-0 `h′`, `h″`.
fn conjugate<'a, L, C, R>(
    tw: &'a Twisted<'a, L, C, R>,
    h_left: Hom<'a, C, L>,
    h_right: Hom<'a, C, R>,
) -> LinMap<'a, Triple<L::B, C::B, R::B>, Triple<L::B, C::B, R::B>, C::K>
where
    C: Dgc,
    L: Dga<K = C::K>,
    R: Dga<K = C::K>,
{
    LinMap::new(0, move |(x, c, y): &Triple<L::B, C::B, R::B>| {
        let mut out = Lin::zero();
        for ((c1, rest), k) in tw.coalg.coproduct(c).iter() {
            let l = tw
                .left
                .alg
                .mul_lin(&Lin::basis(x.clone()), &h_left.apply(c1));
            if l.is_zero() {
                continue;
            }
            for ((c2, c3), k2) in tw.coalg.coproduct(rest).iter() {
                let r = tw
                    .right
                    .alg
                    .mul_lin(&h_right.apply(c3), &Lin::basis(y.clone()));
                for (x1, kx) in l.iter() {
                    for (y1, ky) in r.iter() {
                        out.add_term(
                            (x1.clone(), c2.clone(), y1.clone()),
                            k.clone() * k2.clone() * kx.clone() * ky.clone(),
                        );
                    }
                }
            }
        }
        out
    })
}
