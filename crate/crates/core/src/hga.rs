//! Homotopy Gerstenhaber structures.
//!
//! An HGA is a DGA `A` with operations `E_ℓ: A ⊗ A^{⊗ℓ} → A` whose assembled map
//! `E: B A ⊗ B A → A` is a twisting cochain. `E` is stored in bar-level form: the
//! component on `[a] ⊗ [b_1|…|b_ℓ]` is [`Hga::bracket`]. The induced coalgebra map
//! `B A ⊗ B A → B A` is the product `μ_{BA}`.

use crate::algebras::FreeGc;
use crate::bar::{extend_to_dgc_map, is_twisting_cochain, shuffle_product, Bar, BarPair, Word};
use crate::cochains::{e_sequence, Cochain, Cochains};
use crate::dg::{Bounds, Check, Dga, DgaExt, Dgc, Elem, Hom, LinMap, TensorDga};
use crate::graded::{desuspend_all_parity, koszul_parity, tensor_map_parity, Lin};
use crate::scalar::Field;

/// Where the operations of an HGA come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HgaKind {
    /// Graded-commutative algebra with all `E_ℓ = 0`.
    Commutative,
    /// Interval-cut operations on simplicial cochains.
    Simplicial,
    /// Operations given by an explicit table.
    Table,
}

pub trait Hga: Dga {
    /// `E([a] ⊗ [b_1|…|b_ℓ])` for `ℓ ≥ 1` and letters in the augmentation ideal.
    fn bracket(&self, a: &Self::B, bs: &[Self::B]) -> Elem<Self>;
    fn kind(&self) -> HgaKind;
}

impl<A: Hga + ?Sized> Hga for &A {
    fn bracket(&self, a: &Self::B, bs: &[Self::B]) -> Elem<Self> {
        (**self).bracket(a, bs)
    }
    fn kind(&self) -> HgaKind {
        (**self).kind()
    }
}

impl<K: Field> Hga for FreeGc<K> {
    fn bracket(&self, _a: &Self::B, _bs: &[Self::B]) -> Elem<Self> {
        Lin::zero()
    }
    fn kind(&self) -> HgaKind {
        HgaKind::Commutative
    }
}

/// Parity relating the bar-level component to the interval cut of `(1,2,1,3,…,1,ℓ+1,1)`:
/// `ℓ(ℓ+1)/2 + Σ_{i=0}^{ℓ} (ℓ−i)|x_i|` with `x_0 = a`, `x_i = b_i`.
pub(crate) fn bracket_parity(a_deg: i32, b_degs: &[i32]) -> bool {
    let l = b_degs.len() as i32;
    let mut p = l * (l + 1) / 2;
    for (i, x) in std::iter::once(a_deg)
        .chain(b_degs.iter().copied())
        .enumerate()
    {
        p += (l - i as i32) * x;
    }
    p & 1 == 1
}

impl<K: Field> Hga for Cochains<K> {
    fn bracket(&self, a: &Cochain, bs: &[Cochain]) -> Elem<Self> {
        if *a == Cochain::One || bs.contains(&Cochain::One) {
            return Lin::zero();
        }
        let mut args = vec![Lin::basis(*a)];
        args.extend(bs.iter().map(|b| Lin::basis(*b)));
        let v = self.interval_cut(&e_sequence(bs.len()), &args);
        let degs: Vec<i32> = bs.iter().map(|b| self.degree(b)).collect();
        if bracket_parity(self.degree(a), &degs) {
            v.negated()
        } else {
            v
        }
    }
    fn kind(&self) -> HgaKind {
        HgaKind::Simplicial
    }
}

/// The twisting cochain `E: B A ⊗ B A → A`; it vanishes on `B_{≥2} A ⊗ B A`.
pub fn assemble_e<'a, A: Hga>(pair: &'a BarPair<A, A>) -> Hom<'a, BarPair<A, A>, A> {
    let a = &pair.left.alg;
    LinMap::new(1, move |(w, v): &(Word<A::B>, Word<A::B>)| {
        match (w.len(), v.len()) {
            (0, 1) => Lin::basis(v[0].clone()),
            (1, 0) => Lin::basis(w[0].clone()),
            (1, _) => a.bracket(&w[0], v),
            _ => Lin::zero(),
        }
    })
}

/// Checks that the assembled `E` is a twisting cochain within `bounds`.
pub fn check_hga<A: Hga>(a: &A, bounds: Bounds) -> Check {
    let pair = BarPair::new(a, a);
    let e = assemble_e(&pair);
    is_twisting_cochain(&pair, &pair.left.alg, &e, bounds)
}

/// `μ_{BA}(w ⊗ v)`: sum over the decompositions of `w ⊗ v` into pieces
/// `[]⊗[b]`, `[a]⊗[]` and `[a]⊗[b_•]`, the only ones on which `E` is nonzero.
pub fn hga_bar_product<A: Hga>(bar: &Bar<A>, w: &[A::B], v: &[A::B]) -> Lin<Word<A::B>, A::K> {
    let a = &bar.alg;
    let wd: Vec<i32> = w.iter().map(|x| bar.letter_degree(x)).collect();
    let vd: Vec<i32> = v.iter().map(|x| bar.letter_degree(x)).collect();
    let mut out = Lin::zero();
    if w.is_empty() && v.is_empty() {
        out.add_term(vec![], A::K::one());
        return out;
    }
    struct Walk<'x, A: Hga> {
        a: &'x A,
        bar: &'x Bar<A>,
        w: &'x [A::B],
        v: &'x [A::B],
        wd: &'x [i32],
        vd: &'x [i32],
    }
    impl<A: Hga> Walk<'_, A> {
        fn rec(
            &self,
            i: usize,
            j: usize,
            v_placed: i32,
            odd: bool,
            letters: &mut Vec<Elem<A>>,
            out: &mut Lin<Word<A::B>, A::K>,
        ) {
            if i == self.w.len() && j == self.v.len() {
                out.add_signed(&self.bar.word_of(letters), odd);
                return;
            }
            if j < self.v.len() {
                letters.push(Lin::basis(self.v[j].clone()));
                self.rec(i, j + 1, v_placed + self.vd[j], odd, letters, out);
                letters.pop();
            }
            if i < self.w.len() {
                let o = odd ^ ((v_placed * self.wd[i]) & 1 != 0);
                for k in j..=self.v.len() {
                    let value = if k == j {
                        Lin::basis(self.w[i].clone())
                    } else {
                        self.a.bracket(&self.w[i], &self.v[j..k])
                    };
                    if value.is_zero() {
                        continue;
                    }
                    let placed: i32 = self.vd[j..k].iter().sum();
                    letters.push(value);
                    self.rec(i + 1, k, v_placed + placed, o, letters, out);
                    letters.pop();
                }
            }
        }
    }
    let walk = Walk {
        a,
        bar,
        w,
        v,
        wd: &wd,
        vd: &vd,
    };
    walk.rec(0, 0, 0, false, &mut Vec::new(), &mut out);
    out
}

/// `μ_{BA}` through the generic cofree extension of `E`, used as an oracle.
pub fn hga_bar_product_generic<'a, A: Hga>(
    pair: &'a BarPair<A, A>,
) -> LinMap<'a, (Word<A::B>, Word<A::B>), Word<A::B>, A::K> {
    extend_to_dgc_map(pair, &pair.left, &assemble_e(pair))
}

/// For a commutative HGA the bar product is the shuffle product.
pub fn matches_shuffle<A: Hga>(bar: &Bar<A>, bounds: Bounds) -> Check {
    let words = bar.basis(bounds);
    let pairs = words.iter().flat_map(|w| words.iter().map(move |v| (w, v)));
    Check::run(
        pairs.filter(|(w, v)| w.len() + v.len() <= bounds.max_length),
        |(w, v)| format!("{} * {}", bar.show_word(w), bar.show_word(v)),
        |x| format!("{x:?}"),
        |(w, v)| {
            (
                hga_bar_product(bar, w, v),
                shuffle_product(bar, w, v).unwrap_or_default(),
            )
        },
    )
}

/// `𝔈(a ⊗ [b_•])` extended to `a = 1` by the unit conventions.
pub fn frak_e<A: Hga>(a: &A, x: &A::B, bs: &[A::B]) -> Elem<A> {
    if a.is_unit(x) {
        return if bs.is_empty() { a.one() } else { Lin::zero() };
    }
    if bs.is_empty() {
        return Lin::basis(x.clone());
    }
    a.bracket(x, bs)
}

/// The Cartan-type formula `𝔈(a₁a₂ ⊗ [b_•]) = Σ ± 𝔈(a₁ ⊗ [b_{≤k}]) 𝔈(a₂ ⊗ [b_{>k}])`,
/// the sign being the Koszul sign of moving `b_{≤k}` past `a₂`.
pub fn cartan_check<A: Hga>(bar: &Bar<A>, a1: &A::B, a2: &A::B, bs: &[A::B]) -> (Elem<A>, Elem<A>) {
    let a = &bar.alg;
    let lhs = a.mul(a1, a2).map(|p| frak_e(a, p, bs));
    let mut rhs = Lin::zero();
    for k in 0..=bs.len() {
        let left = frak_e(a, a1, &bs[..k]);
        let right = frak_e(a, a2, &bs[k..]);
        let moved: i32 = bs[..k].iter().map(|b| bar.letter_degree(b)).sum();
        let odd = (moved * a.degree(a2)) & 1 != 0;
        rhs.add_signed(&a.mul_lin(&left, &right), odd);
    }
    (lhs, rhs)
}

/// Both sides of `D_⊗𝔈(a[b_•]) = μ(s⊗𝔈)(1 2) + 𝔈(id⊗d_ext) − μ(𝔈⊗s)` on `a[b_1|…|b_ℓ]`.
pub fn derivation_check<A: Hga>(bar: &Bar<A>, x: &A::B, bs: &[A::B]) -> (Elem<A>, Elem<A>) {
    let a = &bar.alg;
    let ad = a.degree(x);
    let mut lhs = a.d_lin(&frak_e(a, x, bs));
    for (y, c) in a.d(x).iter() {
        lhs.add_scaled(&frak_e(a, y, bs), &-c.clone());
    }
    for (w, c) in bar.d_int(bs).iter() {
        lhs.add_scaled(&frak_e(a, x, w), &(c.clone() * A::K::sign(ad & 1 == 0)));
    }
    let mut rhs = Lin::zero();
    if let Some((b1, rest)) = bs.split_first() {
        let odd = (ad * bar.letter_degree(b1)) & 1 != 0;
        rhs.add_signed(
            &a.mul_lin(&Lin::basis(b1.clone()), &frak_e(a, x, rest)),
            odd,
        );
        let (last, init) = bs.split_last().expect("nonempty");
        let odd = (ad + bar.word_degree(init)) & 1 != 0;
        rhs.add_signed(
            &a.mul_lin(&frak_e(a, x, init), &Lin::basis(last.clone())),
            !odd,
        );
    }
    for (w, c) in bar.d_ext(bs).iter() {
        rhs.add_scaled(&frak_e(a, x, w), &(c.clone() * A::K::sign(ad & 1 != 0)));
    }
    (lhs, rhs)
}

/// The operation `E_ℓ(x; b_1, …, b_ℓ) = E_{1,ℓ}(s⁻¹)^{⊗1+ℓ}` with the unit conventions
/// `E_0 = id`, `E_ℓ(1; …) = 0` and `E_ℓ(…; 1, …) = 0` for `ℓ ≥ 1`.
pub fn e_operation<A: Hga>(a: &A, x: &A::B, bs: &[A::B]) -> Elem<A> {
    if bs.is_empty() {
        return Lin::basis(x.clone());
    }
    if a.is_unit(x) || bs.iter().any(|b| a.is_unit(b)) {
        return Lin::zero();
    }
    let degs: Vec<i32> = std::iter::once(x).chain(bs).map(|y| a.degree(y)).collect();
    let v = a.bracket(x, bs);
    if desuspend_all_parity(&degs) {
        v.negated()
    } else {
        v
    }
}

/// `Φ_{(n)}(α_1⊗β_1 ⊗ … ⊗ α_n⊗β_n)`: `(−1)^{n−1}` times the sum, over shuffles of the
/// `α`s and `β`s in which every proper prefix holds more `α`s than `β`s, of
/// `α_1 · E(α_2; β…) ⋯ E(α_n; β…) · β_n`, each `α_j` absorbing the `β`s that follow it.
pub fn phi_component<A: Hga>(a: &A, cs: &[(A::B, A::B)]) -> Elem<A> {
    let n = cs.len();
    let mut out = Lin::zero();
    if n == 0 {
        return out;
    }
    // symbol 2j is α_{j+1}, symbol 2j+1 is β_{j+1}
    let degs: Vec<i32> = cs
        .iter()
        .flat_map(|(x, y)| [a.degree(x), a.degree(y)])
        .collect();
    let symbol = |k: usize| {
        if k.is_multiple_of(2) {
            &cs[k / 2].0
        } else {
            &cs[k / 2].1
        }
    };
    let mut seqs = Vec::new();
    fn rec(n: usize, alphas: usize, betas: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if alphas == n && betas == n {
            out.push(cur.clone());
            return;
        }
        if alphas < n {
            cur.push(2 * alphas);
            rec(n, alphas + 1, betas, cur, out);
            cur.pop();
        }
        if betas < n && (betas + 1 < alphas || (alphas == n && betas + 1 == n)) {
            cur.push(2 * betas + 1);
            rec(n, alphas, betas + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, 1, 0, &mut vec![0], &mut seqs);
    for seq in seqs {
        let mut target = vec![0; 2 * n];
        for (pos, &k) in seq.iter().enumerate() {
            target[k] = pos;
        }
        let mut odd = koszul_parity(&target, &degs) ^ (n % 2 == 0);
        // groups: [α_1], then each later α with its trailing β's, then the final β_n
        let mut groups: Vec<Vec<usize>> = vec![vec![seq[0]]];
        for &k in &seq[1..2 * n - 1] {
            if k % 2 == 0 {
                groups.push(vec![k]);
            } else {
                groups.last_mut().expect("α_1 opens the sequence").push(k);
            }
        }
        groups.push(vec![seq[2 * n - 1]]);
        let last = groups.len() - 1;
        let map_degs: Vec<i32> = groups
            .iter()
            .enumerate()
            .map(|(i, g)| {
                if i == 0 || i == last {
                    0
                } else {
                    1 - g.len() as i32
                }
            })
            .collect();
        let group_degs: Vec<i32> = groups
            .iter()
            .map(|g| g.iter().map(|&k| degs[k]).sum())
            .collect();
        odd ^= tensor_map_parity(&map_degs, &group_degs);
        let mut factors = Vec::with_capacity(groups.len());
        for (i, g) in groups.iter().enumerate() {
            let v = if i == 0 || i == last {
                Lin::basis(symbol(g[0]).clone())
            } else {
                let bs: Vec<A::B> = g[1..].iter().map(|&k| symbol(k).clone()).collect();
                e_operation(a, symbol(g[0]), &bs)
            };
            if v.is_zero() {
                break;
            }
            factors.push(v);
        }
        if factors.len() == groups.len() {
            out.add_signed(&a.mul_all(&factors), odd);
        }
    }
    out
}

/// The twisting cochain `t_A Φ_A: B(A⊗A) → A`, equal to `Φ_{(n)} s^{⊗n}` on words of length `n`.
pub fn phi_twisting<'a, A: Hga>(a: &'a A) -> LinMap<'a, Word<(A::B, A::B)>, A::B, A::K> {
    LinMap::new(1, move |w: &Word<(A::B, A::B)>| {
        let v = phi_component(a, w);
        let degs: Vec<i32> = w.iter().map(|(x, y)| a.degree(x) + a.degree(y)).collect();
        if desuspend_all_parity(&degs) {
            v.negated()
        } else {
            v
        }
    })
}

/// The coalgebra map `Φ_A: B(A⊗A) → B A` extending [`phi_twisting`].
pub fn phi_map<'a, A: Hga>(
    source: &'a Bar<TensorDga<&'a A, &'a A>>,
    target: &'a Bar<&'a A>,
) -> LinMap<'a, Word<(A::B, A::B)>, Word<A::B>, A::K> {
    extend_to_dgc_map(source, target, &phi_twisting(target.alg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bar::shuffle_map;
    use crate::dg::Dgc;
    use crate::scalar::Q;
    use crate::simplicial::SimplicialSet;

    fn sphere_cochains(n: u32) -> Cochains<Q> {
        Cochains::connected(SimplicialSet::boundary(n))
    }

    fn letters(c: &Cochains<Q>, max: i32) -> Vec<Cochain> {
        (1..=max).flat_map(|n| c.basis(n)).collect()
    }

    #[test]
    fn cochains_of_boundary_tetrahedron_are_an_hga() {
        let c = sphere_cochains(3);
        let r = check_hga(&c, Bounds::new(4, 3));
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn cartan_formula_on_low_degrees() {
        let c = sphere_cochains(4);
        let bar = Bar::new(&c);
        let ls = letters(&c, 3);
        for a1 in &ls {
            for a2 in &ls {
                for b in &ls {
                    for bs in [vec![*b], vec![*b, ls[0]], vec![ls[1], *b]] {
                        let (l, r) = cartan_check(&bar, a1, a2, &bs);
                        assert_eq!(l, r, "{a1:?} {a2:?} {bs:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn derivation_formula_on_low_degrees() {
        let c = sphere_cochains(4);
        let bar = Bar::new(&c);
        let ls = letters(&c, 3);
        for x in &ls {
            for b in &ls {
                for bs in [vec![], vec![*b], vec![*b, ls[2]], vec![ls[3], *b]] {
                    let (l, r) = derivation_check(&bar, x, &bs);
                    assert_eq!(l, r, "{x:?} {bs:?}");
                }
            }
        }
    }

    #[test]
    fn dedicated_product_matches_cofree_extension() {
        let c = sphere_cochains(3);
        let pair = BarPair::new(&c, &c);
        let generic = hga_bar_product_generic(&pair);
        for x in pair.basis(Bounds::new(3, 3)) {
            assert_eq!(
                hga_bar_product(&pair.left, &x.0, &x.1),
                generic.apply(&x),
                "{}",
                pair.show(&x)
            );
        }
    }

    #[test]
    fn bar_product_is_associative_on_letters() {
        let c = sphere_cochains(4);
        let bar = Bar::new(&c);
        let ls = letters(&c, 2);
        let mul = |x: &Lin<Word<Cochain>, Q>, v: &[Cochain]| {
            let mut out = Lin::zero();
            for (w, k) in x.iter() {
                out.add_scaled(&hga_bar_product(&bar, w, v), k);
            }
            out
        };
        for a in &ls {
            for b in &ls {
                for c2 in &ls {
                    let ab = hga_bar_product(&bar, &[*a], &[*b]);
                    let left = mul(&ab, &[*c2]);
                    let bc = hga_bar_product(&bar, &[*b], &[*c2]);
                    let mut right = Lin::zero();
                    for (w, k) in bc.iter() {
                        right.add_scaled(&hga_bar_product(&bar, &[*a], w), k);
                    }
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn commutative_case_gives_the_shuffle_product() {
        let a = FreeGc::<Q>::polynomial(&[("x", 2), ("y", 4)]);
        let r = matches_shuffle(&Bar::new(&a), Bounds::new(8, 3));
        assert!(r.passed(), "{r}");
    }

    fn phi_setup(
        c: &Cochains<Q>,
    ) -> (
        Bar<TensorDga<&Cochains<Q>, &Cochains<Q>>>,
        Bar<&Cochains<Q>>,
    ) {
        (Bar::new(TensorDga::new(c, c)), Bar::new(c))
    }

    #[test]
    fn e_operation_matches_the_signed_interval_cut() {
        let c = sphere_cochains(4);
        let ls = letters(&c, 2);
        for x in &ls {
            for b1 in &ls {
                for b2 in &ls {
                    let bs = [*b1, *b2];
                    let args: Vec<_> = bs.iter().map(|b| Lin::basis(*b)).collect();
                    assert_eq!(e_operation(&c, x, &bs), c.e_op(&Lin::basis(*x), &args));
                }
            }
        }
    }

    #[test]
    fn phi_after_shuffle_map_is_the_bar_product() {
        let c = sphere_cochains(3);
        let (b2, b) = phi_setup(&c);
        let phi = phi_map(&b2, &b);
        let pair = BarPair::new(&c, &c);
        for (w, v) in pair.basis(Bounds::new(4, 4)) {
            let lhs = phi.apply_lin(&shuffle_map(&b, &b, &w, &v));
            assert_eq!(lhs, hga_bar_product(&b, &w, &v), "{}", pair.show(&(w, v)));
        }
    }

    #[test]
    fn phi_twisting_cochain_satisfies_maurer_cartan() {
        let c = sphere_cochains(2);
        let (b2, _) = phi_setup(&c);
        let t = phi_twisting(&c);
        let r = is_twisting_cochain(&b2, &c, &t, Bounds::new(3, 3));
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn phi_is_the_multiplication_for_commutative_algebras() {
        let a = FreeGc::<Q>::polynomial(&[("x", 2)]);
        let x = a.gen(0);
        let u = a.unit();
        let w = vec![(x.clone(), u.clone()), (u.clone(), x.clone())];
        assert!(phi_component(&a, &w).is_zero());
        assert_eq!(phi_component(&a, &[(x.clone(), x.clone())]), a.mul(&x, &x));
    }
}
