//! The product `μ̃` on the two-sided bar construction of a triple of HGAs
//! `A′ ← A → A″`, its definitional composite, the comparison map `ξ` and the
//! homotopy `h` with `Dh = ξμ̃ − μ(ξ⊗ξ)`.

use crate::algebras::check_dga_map;
use crate::bar::{extend_to_dgc_map, shuffle_map, Bar, Word};
use crate::dg::{tensor_map, Bounds, Check, Dga, DgaExt, Dgc, Elem, LinMap, TensorDga};
use crate::graded::Lin;
use crate::hga::{frak_e, hga_bar_product, phi_twisting, Hga};
use crate::scalar::Field;
use crate::twisted::{
    bar_triple_map_unchecked, check_ladder, strict_ladder, tensor_triple_map, two_sided_bar,
    BarLadder, Triple, TwistedElem, TwistedError, TwoSidedBar,
};

/// Basis element `a′[a_•]a″`.
pub type Omega<L, A, R> = Triple<<L as Dga>::B, Word<<A as Dga>::B>, <R as Dga>::B>;
pub type OmegaElem<L, A, R> = TwistedElem<L, Bar<A>, R>;

/// HGA maps `f′: A → A′`, `f″: A → A″` and their two-sided bar construction.
pub struct HgaTriple<'a, L: Hga, A: Hga, R: Hga> {
    pub bar: TwoSidedBar<'a, L, A, R>,
    pub f_left: LinMap<'a, A::B, L::B, A::K>,
    pub f_right: LinMap<'a, A::B, R::B, A::K>,
}

/// `Σ_w c_w 𝔈(x[w])` for a linear combination of words.
fn frak_e_words<A: Hga>(a: &A, x: &A::B, ws: &Lin<Word<A::B>, A::K>) -> Elem<A> {
    let mut out = Lin::zero();
    for (w, c) in ws.iter() {
        out.add_scaled(&frak_e(a, x, w), c);
    }
    out
}

fn triple_terms<X: crate::graded::Key, W: crate::graded::Key, Y: crate::graded::Key, K: Field>(
    out: &mut Lin<(X, W, Y), K>,
    l: &Lin<X, K>,
    m: &Lin<W, K>,
    r: &Lin<Y, K>,
    odd: bool,
) {
    for (x, k1) in l.iter() {
        for (w, k2) in m.iter() {
            for (y, k3) in r.iter() {
                out.add_term(
                    (x.clone(), w.clone(), y.clone()),
                    k1.clone() * k2.clone() * k3.clone() * K::sign(odd),
                );
            }
        }
    }
}

impl<'a, L, A, R> HgaTriple<'a, L, A, R>
where
    A: Hga,
    L: Hga<K = A::K>,
    R: Hga<K = A::K>,
{
    pub fn new(
        left: L,
        mid: A,
        right: R,
        f_left: LinMap<'a, A::B, L::B, A::K>,
        f_right: LinMap<'a, A::B, R::B, A::K>,
    ) -> Self {
        let bar = two_sided_bar(left, mid, right, &f_left, &f_right);
        HgaTriple {
            bar,
            f_left,
            f_right,
        }
    }

    pub fn left(&self) -> &L {
        self.bar.left_alg()
    }

    pub fn mid(&self) -> &A {
        &self.bar.coalg.alg
    }

    pub fn right(&self) -> &R {
        self.bar.right_alg()
    }

    pub fn unit(&self) -> Omega<L, A, R> {
        (self.left().unit(), vec![], self.right().unit())
    }

    /// `f′`, `f″` are DGA maps commuting with the brackets, on inputs within `bounds`.
    pub fn check_maps(&self, bounds: Bounds) -> Check {
        let a = self.mid();
        check_dga_map(a, self.left(), &self.f_left, bounds.max_degree)
            .and(|| check_dga_map(a, self.right(), &self.f_right, bounds.max_degree))
            .and(|| check_hga_map(&self.bar.coalg, &self.bar.left, &self.f_left, bounds))
            .and(|| check_hga_map(&self.bar.coalg, &self.bar.right, &self.f_right, bounds))
    }

    /// `𝔈(a″[f″ b_•]) b″` with the sign `(−1)^{|[b_•]||a″|}` of `τ_{[b];a″}`.
    fn right_factor(&self, a2: &R::B, bs: &[A::B], b2: &R::B) -> Elem<R> {
        let r = self.right();
        let fb = self
            .bar
            .coalg
            .map(&self.bar.right, &self.f_right)
            .apply(&bs.to_vec());
        let e = frak_e_words(r, a2, &fb);
        if e.is_zero() {
            return e;
        }
        let v = r.mul_lin(&e, &Lin::basis(b2.clone()));
        let odd = (self.bar.coalg.word_degree(bs) * r.degree(a2)) & 1 != 0;
        if odd {
            v.negated()
        } else {
            v
        }
    }

    /// `μ̃(a′[a_•]a″ ⊗ b′[b_•]b″)`, the sum of
    /// `±a′b′ ⊗ [a_•]*[b_{(2)}] ⊗ 𝔈(a″[f″b_{(3)}])b″` over `[b] = [b_{(2)}][b_{(3)}]` and
    /// `±a′𝔈(f′a_1[b′|f′b_{(1)}]) ⊗ [a_{≥2}]*[b_{(2)}] ⊗ 𝔈(a″[f″b_{(3)}])b″` over
    /// `[b] = [b_{(1)}][b_{(2)}][b_{(3)}]`, the latter only for `b′ ≠ 1`.
    pub fn mu_tilde(&self, w1: &Omega<L, A, R>, w2: &Omega<L, A, R>) -> OmegaElem<L, A, R> {
        let (x1, a, y1) = w1;
        let (x2, b, y2) = w2;
        let (l, bar, r) = (self.left(), &self.bar.coalg, self.right());
        let (da, db) = (bar.word_degree(a), bar.word_degree(b));
        let (dx2, dy1) = (l.degree(x2), r.degree(y1));
        // Π: b′ moves past [a] and a″, [b] past a″
        let pi = (dx2 * (da + dy1) + db * dy1) & 1 != 0;
        let rights: Vec<Elem<R>> = (0..=b.len())
            .map(|k| self.right_factor(y1, &b[k..], y2))
            .collect();
        let mut out = Lin::zero();

        let front = l.mul(x1, x2);
        if !front.is_zero() {
            for (k, right) in rights.iter().enumerate() {
                if right.is_zero() {
                    continue;
                }
                let mid = hga_bar_product(bar, a, &b[..k]);
                triple_terms(&mut out, &front, &mid, right, pi);
            }
        }

        if l.is_unit(x2) || a.is_empty() {
            return out;
        }
        let (a1, rest) = (&a[0], &a[1..]);
        let d1 = bar.letter_degree(a1);
        let drest = bar.word_degree(rest);
        let fa1 = self.f_left.apply(a1);
        let to_left = bar.map(&self.bar.left, &self.f_left);
        // τ_{b′;[a_1]} and the s⁻¹ passing [a_1]
        let base = pi ^ ((dx2 * d1 + d1) & 1 != 0);
        for i in 0..=b.len() {
            let db1 = bar.word_degree(&b[..i]);
            let mut e = Lin::zero();
            for (w, c) in to_left.apply(&b[..i].to_vec()).iter() {
                let mut word = Vec::with_capacity(w.len() + 1);
                word.push(x2.clone());
                word.extend_from_slice(w);
                for (z, cz) in fa1.iter() {
                    e.add_scaled(&frak_e(l, z, &word), &(c.clone() * cz.clone()));
                }
            }
            if e.is_zero() {
                continue;
            }
            let front = l.mul_lin(&Lin::basis(x1.clone()), &e);
            if front.is_zero() {
                continue;
            }
            let odd = base ^ ((db1 * drest) & 1 != 0);
            for k in i..=b.len() {
                if rights[k].is_zero() {
                    continue;
                }
                let mid = hga_bar_product(bar, rest, &b[i..k]);
                triple_terms(&mut out, &front, &mid, &rights[k], odd);
            }
        }
        out
    }

    pub fn mu_tilde_lin(
        &self,
        x: &OmegaElem<L, A, R>,
        y: &OmegaElem<L, A, R>,
    ) -> OmegaElem<L, A, R> {
        let mut out = Lin::zero();
        for (s, c) in x.iter() {
            for (t, e) in y.iter() {
                out.add_scaled(&self.mu_tilde(s, t), &(c.clone() * e.clone()));
            }
        }
        out
    }

    /// Basis pairs with total degree at most `max_degree` and total word length at most `max_length`.
    pub fn pairs(&self, bounds: Bounds) -> Vec<(Omega<L, A, R>, Omega<L, A, R>)> {
        let basis = self.bar.basis(bounds);
        let mut out = Vec::new();
        for s in &basis {
            for t in &basis {
                if self.bar.degree(s) + self.bar.degree(t) <= bounds.max_degree
                    && s.1.len() + t.1.len() <= bounds.max_length
                {
                    out.push((s.clone(), t.clone()));
                }
            }
        }
        out
    }

    fn show_pair(&self, (s, t): &(Omega<L, A, R>, Omega<L, A, R>)) -> String {
        format!("{} ⊗ {}", self.bar.show(s), self.bar.show(t))
    }

    /// `d μ̃ = μ̃ d_⊗` on the given pairs.
    pub fn check_cochain_map(&self, pairs: &[(Omega<L, A, R>, Omega<L, A, R>)]) -> Check {
        Check::run(
            pairs.iter(),
            |p| self.show_pair(p),
            |z| self.bar.show_lin(z),
            |(s, t)| {
                let lhs = self.bar.d_lin(&self.mu_tilde(s, t));
                let mut rhs = self.mu_tilde_lin(&self.bar.d(s), &Lin::basis(t.clone()));
                let odd = self.bar.degree(s) & 1 != 0;
                rhs.add_signed(
                    &self.mu_tilde_lin(&Lin::basis(s.clone()), &self.bar.d(t)),
                    odd,
                );
                (lhs, rhs)
            },
        )
    }

    /// `1[]1` is a two-sided unit on the given elements.
    pub fn check_unit(&self, elements: &[Omega<L, A, R>]) -> Check {
        let one = self.unit();
        let side = |left: bool| {
            Check::run(
                elements.iter(),
                |s| self.bar.show(s),
                |z| self.bar.show_lin(z),
                |s| {
                    let v = if left {
                        self.mu_tilde(&one, s)
                    } else {
                        self.mu_tilde(s, &one)
                    };
                    (v, Lin::basis((*s).clone()))
                },
            )
        };
        side(true).and(|| side(false))
    }
}

/// `f(𝔈(x[b_•])) = 𝔈(f x[f b_•])` for letters within `bounds`.
fn check_hga_map<A: Hga, T: Hga<K = A::K>>(
    bar: &Bar<A>,
    target: &Bar<T>,
    f: &LinMap<'_, A::B, T::B, A::K>,
    bounds: Bounds,
) -> Check {
    let a = &bar.alg;
    let t = &target.alg;
    let letters: Vec<A::B> = (1..=bounds.max_degree).flat_map(|n| a.basis(n)).collect();
    let words: Vec<Word<A::B>> = bar
        .basis(bounds)
        .into_iter()
        .filter(|w| !w.is_empty())
        .collect();
    let to_target = bar.map(target, f);
    let mut items = Vec::new();
    for x in &letters {
        for w in &words {
            if a.degree(x) + bar.word_degree(w) <= bounds.max_degree {
                items.push((x.clone(), w.clone()));
            }
        }
    }
    Check::run(
        items,
        |(x, w)| format!("{}{}", a.show(x), bar.show_word(w)),
        |z| t.show_lin(z),
        |(x, w)| {
            let lhs = f.apply_lin(&a.bracket(x, w));
            let mut rhs = Lin::zero();
            let fw = to_target.apply(w);
            for (y, c) in f.apply(x).iter() {
                rhs.add_scaled(&frak_e_words(t, y, &fw), c);
            }
            (lhs, rhs)
        },
    )
}

type Doubled<'t, L, A, R> =
    TwoSidedBar<'t, TensorDga<&'t L, &'t L>, TensorDga<&'t A, &'t A>, TensorDga<&'t R, &'t R>>;

/// The definitional composite `B(Φ_{A′}, Φ_A, Φ_{A″}) ∘ (id ⊗ ∇ ⊗ id) ∘ Π`, where `Π`
/// reorders `a′⊗[a]⊗a″⊗b′⊗[b]⊗b″` to `a′⊗b′⊗[a]⊗[b]⊗a″⊗b″`.
pub struct ProductOracle<'t, L: Hga, A: Hga, R: Hga> {
    triple: &'t HgaTriple<'t, L, A, R>,
    doubled: Doubled<'t, L, A, R>,
}

impl<'t, L, A, R> ProductOracle<'t, L, A, R>
where
    A: Hga,
    L: Hga<K = A::K>,
    R: Hga<K = A::K>,
{
    /// Builds `B(A′⊗A′, A⊗A, A″⊗A″)` and checks that the `Φ`s commute with
    /// `B(f′⊗f′)`, `B(f″⊗f″)` within `bounds`.
    pub fn new(triple: &'t HgaTriple<'t, L, A, R>, bounds: Bounds) -> Result<Self, TwistedError> {
        let (l, a, r) = (triple.left(), triple.mid(), triple.right());
        let fl = tensor_map(&triple.f_left, &triple.f_left, |_| 0);
        let fr = tensor_map(&triple.f_right, &triple.f_right, |_| 0);
        let doubled = two_sided_bar(
            TensorDga::new(l, l),
            TensorDga::new(a, a),
            TensorDga::new(r, r),
            &fl,
            &fr,
        );
        let oracle = ProductOracle { triple, doubled };
        check_ladder(&oracle.doubled, &triple.bar, &oracle.ladder(), bounds)?;
        Ok(oracle)
    }

    #[allow(clippy::type_complexity)]
    fn ladder(
        &self,
    ) -> BarLadder<
        '_,
        TensorDga<&'t L, &'t L>,
        TensorDga<&'t A, &'t A>,
        TensorDga<&'t R, &'t R>,
        L,
        A,
        R,
    > {
        let t = self.triple;
        BarLadder {
            left: phi_twisting(t.left()),
            mid: extend_to_dgc_map(&self.doubled.coalg, &t.bar.coalg, &phi_twisting(t.mid())),
            right: phi_twisting(t.right()),
        }
    }

    /// The composite as a bilinear function.
    pub fn product(&self) -> impl Fn(&Omega<L, A, R>, &Omega<L, A, R>) -> OmegaElem<L, A, R> + '_ {
        let map = bar_triple_map_unchecked(&self.doubled, &self.triple.bar, self.ladder());
        let t = self.triple;
        move |(x1, a, y1), (x2, b, y2)| {
            let bar = &t.bar.coalg;
            let pi = (t.left().degree(x2) * (bar.word_degree(a) + t.right().degree(y1))
                + bar.word_degree(b) * t.right().degree(y1))
                & 1
                != 0;
            let mut out = Lin::zero();
            for (w, c) in shuffle_map(bar, bar, a, b).iter() {
                let input = (
                    (x1.clone(), x2.clone()),
                    w.clone(),
                    (y1.clone(), y2.clone()),
                );
                out.add_scaled(&map.apply(&input), &(c.clone() * A::K::sign(pi)));
            }
            out
        }
    }

    /// `μ̃` agrees with the composite on the given pairs.
    pub fn check(&self, pairs: &[(Omega<L, A, R>, Omega<L, A, R>)]) -> Check {
        let product = self.product();
        let t = self.triple;
        Check::run(
            pairs.iter(),
            |p| t.show_pair(p),
            |z| t.bar.show_lin(z),
            |(s, u)| (t.mu_tilde(s, u), product(s, u)),
        )
    }
}

/// `ξ(a′[a_•]a″) = g′(a′) ε[a_•] g″(a″)`.
pub fn xi<L: Dga, A: Dga<K = L::K>, R: Dga<K = L::K>, T: Dga<K = L::K>>(
    target: &T,
    g_left: &LinMap<'_, L::B, T::B, L::K>,
    g_right: &LinMap<'_, R::B, T::B, L::K>,
    (x, w, y): &Omega<L, A, R>,
) -> Elem<T> {
    if !w.is_empty() {
        return Lin::zero();
    }
    target.mul_lin(&g_left.apply(x), &g_right.apply(y))
}

/// Refuses `ξ` unless `g′f′ = g″f″` on the basis of `A` up to `max_degree`.
pub fn check_xi_square<L, A, R, T>(
    triple: &HgaTriple<'_, L, A, R>,
    target: &T,
    g_left: &LinMap<'_, L::B, T::B, A::K>,
    g_right: &LinMap<'_, R::B, T::B, A::K>,
    max_degree: i32,
) -> Check
where
    A: Hga,
    L: Hga<K = A::K>,
    R: Hga<K = A::K>,
    T: Dga<K = A::K>,
{
    let basis: Vec<A::B> = (0..=max_degree)
        .flat_map(|n| triple.mid().basis(n))
        .collect();
    Check::run(
        basis.iter(),
        |b| triple.mid().show(b),
        |z| target.show_lin(z),
        |b| {
            (
                g_left.apply_lin(&triple.f_left.apply(b)),
                g_right.apply_lin(&triple.f_right.apply(b)),
            )
        },
    )
}

/// `ξ` is a cochain map on the basis of `B(A′, A, A″)` within `bounds`.
pub fn check_xi_cochain_map<L, A, R, T>(
    triple: &HgaTriple<'_, L, A, R>,
    target: &T,
    g_left: &LinMap<'_, L::B, T::B, A::K>,
    g_right: &LinMap<'_, R::B, T::B, A::K>,
    bounds: Bounds,
) -> Check
where
    A: Hga,
    L: Hga<K = A::K>,
    R: Hga<K = A::K>,
    T: Dga<K = A::K>,
{
    let xi_lin = |z: &OmegaElem<L, A, R>| {
        let mut out = Lin::zero();
        for (s, c) in z.iter() {
            out.add_scaled(&xi::<L, A, R, T>(target, g_left, g_right, s), c);
        }
        out
    };
    Check::run(
        triple.bar.basis(bounds),
        |s| triple.bar.show(s),
        |z| target.show_lin(z),
        |s| {
            (
                target.d_lin(&xi::<L, A, R, T>(target, g_left, g_right, s)),
                xi_lin(&triple.bar.d(s)),
            )
        },
    )
}

impl<'a, X: Hga> HgaTriple<'a, X, X, X> {
    /// `ξ` for the identity square: `a′[]a″ ↦ a′a″`.
    pub fn xi_identity(&self, s: &Omega<X, X, X>) -> Elem<X> {
        let (x, w, y) = s;
        if !w.is_empty() {
            return Lin::zero();
        }
        self.mid().mul(x, y)
    }

    fn xi_identity_lin(&self, z: &OmegaElem<X, X, X>) -> Elem<X> {
        let mut out = Lin::zero();
        for (s, c) in z.iter() {
            out.add_scaled(&self.xi_identity(s), c);
        }
        out
    }

    /// `h(a′[a_•]a″ ⊗ b′[b_•]b″) = (−1)^{|a′|+|a″|} a′ ε[a_•] 𝔈(a″[b′|b_•]) b″`.
    pub fn homotopy_h(
        &self,
        (x1, a, y1): &Omega<X, X, X>,
        (x2, b, y2): &Omega<X, X, X>,
    ) -> Elem<X> {
        let alg = self.mid();
        if !a.is_empty() || alg.is_unit(x2) {
            return Lin::zero();
        }
        let mut word = Vec::with_capacity(b.len() + 1);
        word.push(x2.clone());
        word.extend_from_slice(b);
        let e = frak_e(alg, y1, &word);
        if e.is_zero() {
            return e;
        }
        let v = alg.mul_all(&[Lin::basis(x1.clone()), e, Lin::basis(y2.clone())]);
        if (alg.degree(x1) + alg.degree(y1)) & 1 != 0 {
            v.negated()
        } else {
            v
        }
    }

    /// `d h + h d_⊗ = ξμ̃ − μ(ξ⊗ξ)` on the given pairs.
    pub fn check_homotopy(&self, pairs: &[(Omega<X, X, X>, Omega<X, X, X>)]) -> Check {
        let alg = self.mid();
        let h_lin = |z: &OmegaElem<X, X, X>, t: &Omega<X, X, X>, first: bool| {
            let mut out = Lin::zero();
            for (s, c) in z.iter() {
                let v = if first {
                    self.homotopy_h(s, t)
                } else {
                    self.homotopy_h(t, s)
                };
                out.add_scaled(&v, c);
            }
            out
        };
        Check::run(
            pairs.iter(),
            |p| self.show_pair(p),
            |z| alg.show_lin(z),
            |(s, t)| {
                let mut lhs = alg.d_lin(&self.homotopy_h(s, t));
                lhs.add_lin(&h_lin(&self.bar.d(s), t, true));
                let odd = self.bar.degree(s) & 1 != 0;
                lhs.add_signed(&h_lin(&self.bar.d(t), s, false), odd);
                let mut rhs = self.xi_identity_lin(&self.mu_tilde(s, t));
                rhs.sub_lin(&alg.mul_lin(&self.xi_identity(s), &self.xi_identity(t)));
                (lhs, rhs)
            },
        )
    }
}

/// `B(g′,g,g″) μ̃ = μ̃ (B(g′,g,g″) ⊗ B(g′,g,g″))` for a ladder of HGA maps, on the given pairs.
#[allow(clippy::too_many_arguments)]
pub fn naturality_check<'a, L0, A0, R0, L1, A1, R1>(
    source: &'a HgaTriple<'a, L0, A0, R0>,
    target: &'a HgaTriple<'a, L1, A1, R1>,
    g_left: &LinMap<'a, L0::B, L1::B, A0::K>,
    g: &LinMap<'a, A0::B, A1::B, A0::K>,
    g_right: &LinMap<'a, R0::B, R1::B, A0::K>,
    pairs: &[(Omega<L0, A0, R0>, Omega<L0, A0, R0>)],
    bounds: Bounds,
) -> Result<Check, TwistedError>
where
    A0: Hga,
    L0: Hga<K = A0::K>,
    R0: Hga<K = A0::K>,
    A1: Hga<K = A0::K>,
    L1: Hga<K = A0::K>,
    R1: Hga<K = A0::K>,
{
    let ladder = strict_ladder(&source.bar.coalg, &target.bar.coalg, g_left, g, g_right);
    check_ladder(&source.bar, &target.bar, &ladder, bounds)?;
    let maps = check_hga_map(&source.bar.left, &target.bar.left, g_left, bounds)
        .and(|| check_hga_map(&source.bar.coalg, &target.bar.coalg, g, bounds))
        .and(|| check_hga_map(&source.bar.right, &target.bar.right, g_right, bounds));
    if !maps.passed() {
        return Ok(maps);
    }
    let map = tensor_triple_map(g_left, &ladder.mid, g_right);
    Ok(Check::run(
        pairs.iter(),
        |p| source.show_pair(p),
        |z| target.bar.show_lin(z),
        |(s, t)| {
            (
                map.apply_lin(&source.mu_tilde(s, t)),
                target.mu_tilde_lin(&map.apply(s), &map.apply(t)),
            )
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{augmentation_map, free_gc_map, identity_map, FreeGc, Mono};
    use crate::bar::shuffle_product;
    use crate::cochains::{Cochain, Cochains};
    use crate::scalar::Q;
    use crate::simplicial::{SimplicialMap, SimplicialSet};

    fn kx(d: i32) -> FreeGc<Q> {
        FreeGc::polynomial(&[("x", d)])
    }

    fn oracle_agrees<L: Hga<K = Q>, A: Hga<K = Q>, R: Hga<K = Q>>(
        t: &HgaTriple<'_, L, A, R>,
        bounds: Bounds,
    ) {
        let oracle = ProductOracle::new(t, bounds).expect("ladder commutes");
        let r = oracle.check(&t.pairs(bounds));
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn ground_field_sides_give_the_shuffle_product() {
        let (k, a) = (FreeGc::<Q>::ground(), kx(2));
        let aug = augmentation_map(&a);
        let t = HgaTriple::new(&k, &a, &k, aug.clone(), aug);
        let one = k.unit();
        let bounds = Bounds::new(8, 4);
        for (s, u) in t.pairs(bounds) {
            let expected = shuffle_product(&t.bar.coalg, &s.1, &u.1)
                .unwrap()
                .relabel(|w| (one.clone(), w.clone(), one.clone()));
            assert_eq!(t.mu_tilde(&s, &u), expected);
        }
        oracle_agrees(&t, bounds);
    }

    #[test]
    fn square_inclusion_matches_the_composite() {
        let (kt, a, k) = (kx(2), kx(4), FreeGc::<Q>::ground());
        let t2 = kt.mul(&kt.gen(0), &kt.gen(0));
        let f = free_gc_map(&kt, vec![t2]);
        let t = HgaTriple::new(&kt, &a, &k, f, augmentation_map(&a));
        let bounds = Bounds::new(12, 3);
        assert!(t.check_maps(bounds).passed());
        oracle_agrees(&t, bounds);
        let pairs = t.pairs(bounds);
        let r = t.check_cochain_map(&pairs);
        assert!(r.passed(), "{r}");
        let one = (kt.gen(0), vec![a.gen(0)], k.unit());
        let r = t.check_unit(&[one]);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn cochains_of_boundary_tetrahedron() {
        let c = Cochains::<Q>::connected(SimplicialSet::boundary(3));
        let t = HgaTriple::new(
            &c,
            &c,
            &c,
            identity_map::<Cochains<Q>>(),
            identity_map::<Cochains<Q>>(),
        );
        let bounds = Bounds::new(4, 2);
        oracle_agrees(&t, bounds);
        let pairs = t.pairs(bounds);
        let r = t.check_cochain_map(&pairs);
        assert!(r.passed(), "{r}");
        let r = t.check_homotopy(&pairs);
        assert!(r.passed(), "{r}");
        let r = t.check_unit(&t.bar.basis(bounds));
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn xi_refuses_a_non_commuting_square() {
        let (kt, a, k) = (kx(2), kx(4), FreeGc::<Q>::ground());
        let t2 = kt.mul(&kt.gen(0), &kt.gen(0));
        let f = free_gc_map(&kt, vec![t2]);
        let t = HgaTriple::new(&kt, &a, &k, f, augmentation_map(&a));
        let g_left: LinMap<'_, Mono, Mono, Q> = identity_map::<FreeGc<Q>>();
        let to_kt = free_gc_map(&kt, vec![Lin::zero()]);
        assert!(!check_xi_square(&t, &kt, &g_left, &to_kt, 8).passed());
        let g_left = augmentation_map(&kt);
        let g_right: LinMap<'_, Mono, Mono, Q> = identity_map::<FreeGc<Q>>();
        assert!(check_xi_square(&t, &k, &g_left, &g_right, 8).passed());
        assert!(check_xi_cochain_map(&t, &k, &g_left, &g_right, Bounds::new(8, 3)).passed());
    }

    #[test]
    fn augmenting_the_left_side_is_natural() {
        let (kt, a, k) = (kx(2), kx(4), FreeGc::<Q>::ground());
        let t2 = kt.mul(&kt.gen(0), &kt.gen(0));
        let source = HgaTriple::new(
            &kt,
            &a,
            &k,
            free_gc_map(&kt, vec![t2]),
            augmentation_map(&a),
        );
        let target = HgaTriple::new(&k, &a, &k, augmentation_map(&a), augmentation_map(&a));
        let bounds = Bounds::new(10, 3);
        let (id_a, id_k) = (identity_map::<FreeGc<Q>>(), identity_map::<FreeGc<Q>>());
        let r = naturality_check(
            &source,
            &target,
            &augmentation_map(&kt),
            &id_a,
            &id_k,
            &source.pairs(bounds),
            bounds,
        );
        assert!(r.expect("ladder commutes").passed());
    }

    #[test]
    fn restriction_to_a_face_is_natural() {
        let c3 = Cochains::<Q>::connected(SimplicialSet::boundary(3));
        let c2 = Cochains::<Q>::connected(SimplicialSet::boundary(2));
        let map = SimplicialMap::by_name(c2.set(), c3.set()).unwrap();
        let (c2r, c3r) = (&c2, &c3);
        let g = LinMap::new(0, move |x: &Cochain| {
            c3r.pullback(c2r, &|s| map.image(s).clone(), &Lin::basis(*x))
        });
        let id = identity_map::<Cochains<Q>>;
        let source = HgaTriple::new(&c3, &c3, &c3, id(), id());
        let target = HgaTriple::new(&c2, &c2, &c2, id(), id());
        let bounds = Bounds::new(4, 2);
        let r = naturality_check(&source, &target, &g, &g, &g, &source.pairs(bounds), bounds)
            .expect("ladder commutes");
        assert!(r.passed(), "{r}");
    }
}
