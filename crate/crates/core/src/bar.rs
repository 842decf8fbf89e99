//! The bar construction `B A` as a DGC, twisting cochains, the cofree
//! extension, shuffle maps and products, and the homotopy correspondence.
//!
//! A word `[a_1|…|a_n]` stores basis elements of the augmentation ideal; the
//! desuspension is implicit in the degree `Σ(|a_j| − 1)` and in the signs.

use crate::dg::{
    cup, hom_differential, tensor_lin, Bounds, Check, Decomposition, Dga, DgaExt, Dgc, Elem, Hom,
    LinMap,
};
use crate::graded::{koszul_parity, shuffles, Key, Lin};
use crate::scalar::Field;

pub type Word<B> = Vec<B>;

/// The bar construction on a connected DGA.
#[derive(Clone, Debug)]
pub struct Bar<A> {
    pub alg: A,
}

impl<A: Dga> Bar<A> {
    pub fn new(alg: A) -> Self {
        Bar { alg }
    }

    /// Bar degree of a single letter.
    pub fn letter_degree(&self, a: &A::B) -> i32 {
        self.alg.degree(a) - 1
    }

    pub fn word_degree(&self, w: &[A::B]) -> i32 {
        w.iter().map(|a| self.letter_degree(a)).sum()
    }

    /// Expands `[x_1|…|x_n]` for arbitrary elements `x_i`, dropping unit components.
    pub fn word_of(&self, letters: &[Elem<A>]) -> Lin<Word<A::B>, A::K> {
        let mut acc: Lin<Word<A::B>, A::K> = Lin::basis(vec![]);
        for x in letters {
            let x = self.alg.reduce(x);
            if x.is_zero() {
                return Lin::zero();
            }
            acc = acc.bilinear(&x, |w, a| {
                let mut w = w.clone();
                w.push(a.clone());
                Lin::basis(w)
            });
        }
        acc
    }

    /// Replaces `w[i..j]` by the single letter `x`.
    pub fn splice(&self, w: &[A::B], i: usize, j: usize, x: &Elem<A>) -> Lin<Word<A::B>, A::K> {
        let u = self.alg.unit();
        let mut out = Lin::zero();
        for (a, c) in x.iter() {
            if *a == u {
                continue;
            }
            let mut v = Vec::with_capacity(w.len() + 1 + i - j);
            v.extend_from_slice(&w[..i]);
            v.push(a.clone());
            v.extend_from_slice(&w[j..]);
            out.add_term(v, c.clone());
        }
        out
    }

    /// Internal differential: letterwise `−s⁻¹ d s` with Koszul signs.
    pub fn d_int(&self, w: &[A::B]) -> Lin<Word<A::B>, A::K> {
        let mut out = Lin::zero();
        let mut eps = 0;
        for i in 0..w.len() {
            let da = self.alg.d(&w[i]);
            if !da.is_zero() {
                out.add_signed(&self.splice(w, i, i + 1, &da), eps & 1 == 0);
            }
            eps += self.letter_degree(&w[i]);
        }
        out
    }

    /// External differential: `Σ id ⊗ s⁻¹μ s^{⊗2} ⊗ id`.
    pub fn d_ext(&self, w: &[A::B]) -> Lin<Word<A::B>, A::K> {
        let mut out = Lin::zero();
        let mut eps = 0;
        for i in 0..w.len().saturating_sub(1) {
            eps += self.letter_degree(&w[i]);
            let prod = self.alg.mul(&w[i], &w[i + 1]);
            if !prod.is_zero() {
                out.add_signed(&self.splice(w, i, i + 2, &prod), eps & 1 != 0);
            }
        }
        out
    }

    /// Tautological twisting cochain `t_A = s ∘ pr_1`.
    pub fn tautological(&self) -> Hom<'_, Self, A> {
        LinMap::new(1, |w: &Word<A::B>| {
            if w.len() == 1 {
                Lin::basis(w[0].clone())
            } else {
                Lin::zero()
            }
        })
    }

    /// Words of exact bar degree `n` and length at most `max_length`.
    pub fn words_in_degree(&self, n: i32, max_length: usize) -> Vec<Word<A::B>> {
        let mut out = Vec::new();
        let pool = self.letter_pool(n + 1);
        let mut cur = Vec::new();
        self.rec_words(&pool, n, max_length, true, &mut cur, &mut out);
        out
    }

    fn letter_pool(&self, max_alg_degree: i32) -> Vec<(A::B, i32)> {
        let mut pool = Vec::new();
        for d in 1..=max_alg_degree {
            for b in self.alg.basis(d) {
                if !self.alg.is_unit(&b) {
                    pool.push((b, d - 1));
                }
            }
        }
        pool
    }

    fn rec_words(
        &self,
        pool: &[(A::B, i32)],
        remaining: i32,
        len_left: usize,
        exact: bool,
        cur: &mut Word<A::B>,
        out: &mut Vec<Word<A::B>>,
    ) {
        if !exact || remaining == 0 {
            out.push(cur.clone());
        }
        if len_left == 0 {
            return;
        }
        for (b, d) in pool {
            if *d <= remaining {
                cur.push(b.clone());
                self.rec_words(pool, remaining - d, len_left - 1, exact, cur, out);
                cur.pop();
            }
        }
    }

    /// Linear extension of `[a_•] ↦ [f a_•]` for a DGA map `f`.
    pub fn map<'a, T: Dga<K = A::K> + 'a>(
        &'a self,
        target: &'a Bar<T>,
        f: &LinMap<'a, A::B, T::B, A::K>,
    ) -> LinMap<'a, Word<A::B>, Word<T::B>, A::K> {
        let f = f.clone();
        LinMap::new(0, move |w: &Word<A::B>| {
            let letters: Vec<Elem<T>> = w.iter().map(|a| f.apply(a)).collect();
            target.word_of(&letters)
        })
    }

    pub fn show_word(&self, w: &[A::B]) -> String {
        let inner: Vec<String> = w.iter().map(|a| self.alg.show(a)).collect();
        format!("[{}]", inner.join("|"))
    }
}

impl<A: Dga> Dgc for Bar<A> {
    type K = A::K;
    type B = Word<A::B>;

    fn degree(&self, w: &Word<A::B>) -> i32 {
        self.word_degree(w)
    }
    fn counit_basis(&self) -> Word<A::B> {
        vec![]
    }
    fn d(&self, w: &Word<A::B>) -> Lin<Word<A::B>, A::K> {
        let mut out = self.d_int(w);
        out.add_lin(&self.d_ext(w));
        out
    }
    fn coproduct(&self, w: &Word<A::B>) -> Lin<(Word<A::B>, Word<A::B>), A::K> {
        deconcatenate(w)
            .into_iter()
            .map(|p| (p, A::K::one()))
            .collect()
    }
    fn length(&self, w: &Word<A::B>) -> usize {
        w.len()
    }
    fn basis(&self, bounds: Bounds) -> Vec<Word<A::B>> {
        let pool = self.letter_pool(bounds.max_degree + 1);
        let mut out = Vec::new();
        self.rec_words(
            &pool,
            bounds.max_degree,
            bounds.max_length,
            false,
            &mut Vec::new(),
            &mut out,
        );
        out
    }
    fn decompositions(&self, w: &Word<A::B>) -> Vec<Decomposition<Word<A::B>>> {
        compositions(w.len())
            .into_iter()
            .map(|cuts| (false, cut_word(w, &cuts)))
            .collect()
    }
}

/// `Δ[w] = Σ_p w[..p] ⊗ w[p..]`.
pub fn deconcatenate<B: Clone>(w: &[B]) -> Vec<(Word<B>, Word<B>)> {
    (0..=w.len())
        .map(|p| (w[..p].to_vec(), w[p..].to_vec()))
        .collect()
}

/// Concatenation `Δ_⊢`.
pub fn concatenate<B: Clone>(w: &[B], v: &[B]) -> Word<B> {
    let mut out = w.to_vec();
    out.extend_from_slice(v);
    out
}

/// Interior cut points of all compositions of `n` into nonempty parts.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << (n - 1)) {
        out.push((1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect());
    }
    out
}

pub fn cut_word<B: Clone>(w: &[B], cuts: &[usize]) -> Vec<Word<B>> {
    let mut out = Vec::with_capacity(cuts.len() + 1);
    let mut start = 0;
    for &c in cuts.iter().chain(std::iter::once(&w.len())) {
        out.push(w[start..c].to_vec());
        start = c;
    }
    out
}

/// The cofree extension of a degree-1 map `t: C → Ā` to a coalgebra map
/// `F: C → B A` with `pr_n F = Δ_⊢^{(n)} ∘ (s⁻¹t)^{⊗n} ∘ Δ̄^{(n)}`.
pub fn extend_to_dgc_map<'a, C, A>(
    c: &'a C,
    target: &'a Bar<A>,
    t: &LinMap<'a, C::B, A::B, A::K>,
) -> LinMap<'a, C::B, Word<A::B>, A::K>
where
    C: Dgc<K = A::K>,
    A: Dga,
{
    assert_eq!(t.degree, 1, "twisting cochains have degree 1");
    let t = t.clone();
    LinMap::new(0, move |x: &C::B| {
        if *x == c.counit_basis() {
            return Lin::basis(vec![]);
        }
        let mut out = Lin::zero();
        for (odd, pieces) in c.decompositions(x) {
            let letters: Vec<Elem<A>> = pieces.iter().map(|p| t.apply(p)).collect();
            if letters.iter().any(|l| l.is_zero()) {
                continue;
            }
            out.add_signed(&target.word_of(&letters), odd);
        }
        out
    })
}

/// `t_A ∘ F`: the twisting cochain of a coalgebra map into `B A`.
pub fn twisting_part<'a, S: Key, A: Dga>(
    f: &LinMap<'a, S, Word<A::B>, A::K>,
) -> LinMap<'a, S, A::B, A::K> {
    let f = f.clone();
    LinMap::new(f.degree + 1, move |x| {
        let mut out = Lin::zero();
        for (w, c) in f.apply(x).iter() {
            if w.len() == 1 {
                out.add_term(w[0].clone(), c.clone());
            }
        }
        out
    })
}

/// Checks `εt = 0`, `tη = 0` and `Dt = t ∪ t` on the basis within `bounds`.
pub fn is_twisting_cochain<'a, C, A>(c: &'a C, a: &'a A, t: &Hom<'a, C, A>, bounds: Bounds) -> Check
where
    C: Dgc<K = A::K>,
    A: Dga,
{
    if t.degree != 1 {
        return Check::Fail {
            at: "degree".into(),
            lhs: t.degree.to_string(),
            rhs: "1".into(),
        };
    }
    let basis = c.basis(bounds);
    let show = |x: &Elem<A>| a.show_lin(x);
    if !t.apply(&c.counit_basis()).is_zero() {
        return Check::Fail {
            at: "t∘η".into(),
            lhs: show(&t.apply(&c.counit_basis())),
            rhs: "0".into(),
        };
    }
    for b in &basis {
        if !a.augmentation(&t.apply(b)).is_zero() {
            return Check::Fail {
                at: format!("ε∘t at {b:?}"),
                lhs: show(&t.apply(b)),
                rhs: "0".into(),
            };
        }
    }
    let dt = hom_differential(c, a, t);
    let tt = cup(c, a, t, t);
    Check::run(
        basis.iter(),
        |b| format!("{b:?}"),
        show,
        |b| (dt.apply(b), tt.apply(b)),
    )
}

/// `B A ⊗ B B` (or any pair of DGCs) with the tensor coalgebra structure.
#[derive(Clone, Debug)]
pub struct TensorDgc<C1, C2> {
    pub left: C1,
    pub right: C2,
}

impl<C1: Dgc, C2: Dgc<K = C1::K>> TensorDgc<C1, C2> {
    pub fn new(left: C1, right: C2) -> Self {
        TensorDgc { left, right }
    }
}

impl<C1: Dgc, C2: Dgc<K = C1::K>> Dgc for TensorDgc<C1, C2> {
    type K = C1::K;
    type B = (C1::B, C2::B);

    fn degree(&self, b: &Self::B) -> i32 {
        self.left.degree(&b.0) + self.right.degree(&b.1)
    }
    fn counit_basis(&self) -> Self::B {
        (self.left.counit_basis(), self.right.counit_basis())
    }
    fn d(&self, x: &Self::B) -> Lin<Self::B, Self::K> {
        let mut out = tensor_lin(&self.left.d(&x.0), &Lin::basis(x.1.clone()));
        out.add_signed(
            &tensor_lin(&Lin::basis(x.0.clone()), &self.right.d(&x.1)),
            self.left.degree(&x.0) & 1 != 0,
        );
        out
    }
    fn coproduct(&self, x: &Self::B) -> Lin<(Self::B, Self::B), Self::K> {
        let mut out = Lin::zero();
        for ((w1, w2), a) in self.left.coproduct(&x.0).iter() {
            for ((v1, v2), b) in self.right.coproduct(&x.1).iter() {
                let odd = (self.left.degree(w2) * self.right.degree(v1)) & 1 != 0;
                let c = a.clone() * b.clone() * Self::K::sign(odd);
                out.add_term(((w1.clone(), v1.clone()), (w2.clone(), v2.clone())), c);
            }
        }
        out
    }
    fn length(&self, x: &Self::B) -> usize {
        self.left.length(&x.0) + self.right.length(&x.1)
    }
    fn basis(&self, bounds: Bounds) -> Vec<Self::B> {
        let ls = self.left.basis(bounds);
        let rs = self.right.basis(bounds);
        let mut out = Vec::new();
        for l in &ls {
            for r in &rs {
                if self.left.degree(l) + self.right.degree(r) <= bounds.max_degree
                    && self.left.length(l) + self.right.length(r) <= bounds.max_length
                {
                    out.push((l.clone(), r.clone()));
                }
            }
        }
        out
    }
}

/// All decompositions of `w ⊗ v ∈ B A ⊗ B B` into `n` pieces `(w_i, v_i)`, none equal
/// to `[]⊗[]`, with the Koszul sign of moving the `v_j` past the later `w_i`.
pub fn pair_decompositions<A: Dga, B2: Dga<K = A::K>>(
    left: &Bar<A>,
    right: &Bar<B2>,
    w: &[A::B],
    v: &[B2::B],
) -> Vec<Decomposition<(Word<A::B>, Word<B2::B>)>> {
    let mut out = Vec::new();
    if w.is_empty() && v.is_empty() {
        return out;
    }
    let wd: Vec<i32> = w.iter().map(|a| left.letter_degree(a)).collect();
    let vd: Vec<i32> = v.iter().map(|b| right.letter_degree(b)).collect();
    // choose the cut points of w and v simultaneously
    #[allow(clippy::too_many_arguments)]
    fn rec<X: Clone, Y: Clone>(
        w: &[X],
        v: &[Y],
        wd: &[i32],
        vd: &[i32],
        i: usize,
        j: usize,
        // degree of the v-material already placed, to be moved past later w-pieces
        v_placed: i32,
        odd: bool,
        cur: &mut Vec<(Word<X>, Word<Y>)>,
        out: &mut Vec<(bool, Vec<(Word<X>, Word<Y>)>)>,
    ) {
        if i == w.len() && j == v.len() {
            out.push((odd, cur.clone()));
            return;
        }
        for i2 in i..=w.len() {
            for j2 in j..=v.len() {
                if i2 == i && j2 == j {
                    continue;
                }
                let wdeg: i32 = wd[i..i2].iter().sum();
                let vdeg: i32 = vd[j..j2].iter().sum();
                let o = odd ^ ((v_placed * wdeg) & 1 != 0);
                cur.push((w[i..i2].to_vec(), v[j..j2].to_vec()));
                rec(w, v, wd, vd, i2, j2, v_placed + vdeg, o, cur, out);
                cur.pop();
            }
        }
    }
    rec(w, v, &wd, &vd, 0, 0, 0, false, &mut Vec::new(), &mut out);
    out
}

/// `B A ⊗ B B` with the dedicated decomposition enumerator.
pub struct BarPair<A, B2> {
    pub left: Bar<A>,
    pub right: Bar<B2>,
}

impl<A: Dga, B2: Dga<K = A::K>> BarPair<A, B2> {
    pub fn new(left: A, right: B2) -> Self {
        BarPair {
            left: Bar::new(left),
            right: Bar::new(right),
        }
    }

    pub fn show(&self, x: &(Word<A::B>, Word<B2::B>)) -> String {
        format!(
            "{}⊗{}",
            self.left.show_word(&x.0),
            self.right.show_word(&x.1)
        )
    }
}

impl<A: Dga, B2: Dga<K = A::K>> Dgc for BarPair<A, B2> {
    type K = A::K;
    type B = (Word<A::B>, Word<B2::B>);

    fn degree(&self, b: &Self::B) -> i32 {
        self.left.word_degree(&b.0) + self.right.word_degree(&b.1)
    }
    fn counit_basis(&self) -> Self::B {
        (vec![], vec![])
    }
    fn d(&self, x: &Self::B) -> Lin<Self::B, Self::K> {
        let mut out = tensor_lin(&self.left.d(&x.0), &Lin::basis(x.1.clone()));
        out.add_signed(
            &tensor_lin(&Lin::basis(x.0.clone()), &self.right.d(&x.1)),
            self.left.word_degree(&x.0) & 1 != 0,
        );
        out
    }
    fn coproduct(&self, x: &Self::B) -> Lin<(Self::B, Self::B), Self::K> {
        let mut out = Lin::zero();
        for (w1, w2) in deconcatenate(&x.0) {
            for (v1, v2) in deconcatenate(&x.1) {
                let odd = (self.left.word_degree(&w2) * self.right.word_degree(&v1)) & 1 != 0;
                out.add_term(((w1.clone(), v1), (w2.clone(), v2)), Self::K::sign(odd));
            }
        }
        out
    }
    fn length(&self, x: &Self::B) -> usize {
        x.0.len() + x.1.len()
    }
    fn basis(&self, bounds: Bounds) -> Vec<Self::B> {
        let ls = self.left.basis(bounds);
        let rs = self.right.basis(bounds);
        let mut out = Vec::new();
        for l in &ls {
            for r in &rs {
                if self.left.word_degree(l) + self.right.word_degree(r) <= bounds.max_degree
                    && l.len() + r.len() <= bounds.max_length
                {
                    out.push((l.clone(), r.clone()));
                }
            }
        }
        out
    }
    fn decompositions(&self, x: &Self::B) -> Vec<Decomposition<Self::B>> {
        pair_decompositions(&self.left, &self.right, &x.0, &x.1)
    }
}

/// Shuffle map `∇: B A ⊗ B B → B(A⊗B)`.
pub fn shuffle_map<A: Dga, B2: Dga<K = A::K>>(
    left: &Bar<A>,
    right: &Bar<B2>,
    w: &[A::B],
    v: &[B2::B],
) -> Lin<Word<(A::B, B2::B)>, A::K> {
    let letters: Vec<(A::B, B2::B)> = w
        .iter()
        .map(|a| (a.clone(), right.alg.unit()))
        .chain(v.iter().map(|b| (left.alg.unit(), b.clone())))
        .collect();
    let degs: Vec<i32> = w
        .iter()
        .map(|a| left.letter_degree(a))
        .chain(v.iter().map(|b| right.letter_degree(b)))
        .collect();
    let mut out = Lin::zero();
    for target in shuffles(w.len(), v.len()) {
        let odd = koszul_parity(&target, &degs);
        let mut word = letters.clone();
        for (i, t) in target.iter().enumerate() {
            word[*t] = letters[i].clone();
        }
        out.add_term(word, A::K::sign(odd));
    }
    out
}

/// Shuffle product on `B A` for graded-commutative `A` (equal to `Bμ ∘ ∇`).
pub fn shuffle_product<A: Dga>(
    bar: &Bar<A>,
    w: &[A::B],
    v: &[A::B],
) -> Result<Lin<Word<A::B>, A::K>, String> {
    if !bar.alg.is_commutative() {
        return Err("the shuffle product needs a graded-commutative algebra".into());
    }
    let letters: Vec<A::B> = w.iter().chain(v).cloned().collect();
    let degs: Vec<i32> = letters.iter().map(|a| bar.letter_degree(a)).collect();
    let mut out = Lin::zero();
    for target in shuffles(w.len(), v.len()) {
        let odd = koszul_parity(&target, &degs);
        let mut word = letters.clone();
        for (i, t) in target.iter().enumerate() {
            word[*t] = letters[i].clone();
        }
        out.add_term(word, A::K::sign(odd));
    }
    Ok(out)
}

/// `t_∇ = μ(t⊗ε + ε⊗t)` on `B A ⊗ B A`.
pub fn shuffle_twisting_cochain<'a, A: Dga>(
    pair: &'a BarPair<A, A>,
) -> LinMap<'a, (Word<A::B>, Word<A::B>), A::B, A::K> {
    let _ = pair;
    LinMap::new(1, |(w, v): &(Word<A::B>, Word<A::B>)| {
        if w.len() == 1 && v.is_empty() {
            Lin::basis(w[0].clone())
        } else if w.is_empty() && v.len() == 1 {
            Lin::basis(v[0].clone())
        } else {
            Lin::zero()
        }
    })
}

/// `h = ηε + t_A H` for a DGC homotopy `H: C → B A`.
pub fn homotopy_adjunction<'a, C, A>(
    c: &'a C,
    bar: &'a Bar<A>,
    h: &LinMap<'a, C::B, Word<A::B>, A::K>,
) -> Hom<'a, C, A>
where
    C: Dgc<K = A::K>,
    A: Dga,
{
    let th = twisting_part::<C::B, A>(h);
    LinMap::new(0, move |x| {
        let mut out = Lin::term(bar.alg.unit(), c.counit(x));
        out.add_lin(&th.apply(x));
        out
    })
}

/// Rebuilds the DGC homotopy from `h`, `t = t_A F` and `u = t_A G`:
/// `pr_n H = Σ_i ± (f̃^{⊗i−1} ⊗ s⁻¹h̄ ⊗ g̃^{⊗n−i}) Δ̄^{(n)}` with `h̄ = h − ηε`.
pub fn homotopy_from_cochain<'a, C, A>(
    c: &'a C,
    bar: &'a Bar<A>,
    h: &Hom<'a, C, A>,
    t: &Hom<'a, C, A>,
    u: &Hom<'a, C, A>,
) -> LinMap<'a, C::B, Word<A::B>, A::K>
where
    C: Dgc<K = A::K>,
    A: Dga,
{
    let (h, t, u) = (h.clone(), t.clone(), u.clone());
    LinMap::new(-1, move |x: &C::B| {
        let mut out = Lin::zero();
        for (odd, pieces) in c.decompositions(x) {
            let mut before = 0;
            for i in 0..pieces.len() {
                let mut letters: Vec<Elem<A>> = Vec::with_capacity(pieces.len());
                letters.extend(pieces[..i].iter().map(|p| t.apply(p)));
                letters.push(h.apply(&pieces[i]));
                letters.extend(pieces[i + 1..].iter().map(|p| u.apply(p)));
                out.add_signed(&bar.word_of(&letters), odd ^ (before & 1 != 0));
                before += c.degree(&pieces[i]);
            }
        }
        out
    })
}

/// Conditions on a twisting-cochain homotopy: `εh = ε`, `hη = η`,
/// `Dh = t∪h − h∪u`.
pub fn check_cochain_homotopy<'a, C, A>(
    c: &'a C,
    a: &'a A,
    h: &Hom<'a, C, A>,
    t: &Hom<'a, C, A>,
    u: &Hom<'a, C, A>,
    bounds: Bounds,
) -> Check
where
    C: Dgc<K = A::K>,
    A: Dga,
{
    let basis = c.basis(bounds);
    let show = |x: &Elem<A>| a.show_lin(x);
    if h.apply(&c.counit_basis()) != a.one() {
        return Check::Fail {
            at: "h∘η".into(),
            lhs: show(&h.apply(&c.counit_basis())),
            rhs: "1".into(),
        };
    }
    for b in &basis {
        if a.augmentation(&h.apply(b)) != c.counit(b) {
            return Check::Fail {
                at: format!("ε∘h at {b:?}"),
                lhs: show(&h.apply(b)),
                rhs: "ε".into(),
            };
        }
    }
    let dh = hom_differential(c, a, h);
    let rhs = cup(c, a, t, h).sub(&cup(c, a, h, u));
    Check::run(
        basis.iter(),
        |b| format!("{b:?}"),
        show,
        |b| (dh.apply(b), rhs.apply(b)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{FreeAssoc, FreeGc};
    use crate::dg::{check_dgc, cup_unit, DgcExt};
    use crate::scalar::Q;

    fn kx() -> Bar<FreeGc<Q>> {
        Bar::new(FreeGc::polynomial(&[("x", 2)]))
    }

    #[test]
    fn external_differential_on_short_words() {
        let b = kx();
        let (x, x2) = (vec![1u32], vec![2u32]);
        assert_eq!(
            b.d(&vec![x.clone(), x.clone()]),
            Lin::term(vec![x2.clone()], -Q::one())
        );
        let mut expect = Lin::term(vec![x2.clone(), x.clone()], -Q::one());
        expect.add_term(vec![x.clone(), x2.clone()], Q::one());
        let w = vec![x.clone(), x.clone(), x.clone()];
        assert_eq!(b.d(&w), expect);
        assert!(b.d_lin(&b.d(&w)).is_zero());
    }

    #[test]
    fn bar_of_polynomial_ring_is_a_dgc() {
        let b = kx();
        let r = check_dgc(&b, Bounds::new(10, 4));
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn tautological_cochain_is_twisting() {
        let b = kx();
        let r = is_twisting_cochain(&b, &b.alg, &b.tautological(), Bounds::new(10, 5));
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn shuffle_square_of_even_letter_vanishes() {
        let b = kx();
        assert!(shuffle_product(&b, &[vec![1]], &[vec![1]])
            .unwrap()
            .is_zero());
    }

    #[test]
    fn shuffle_twisting_cochain_detects_commutativity() {
        let pair = BarPair::new(
            FreeGc::<Q>::polynomial(&[("x", 2), ("y", 4)]),
            FreeGc::polynomial(&[("x", 2), ("y", 4)]),
        );
        let t = shuffle_twisting_cochain(&pair);
        assert!(is_twisting_cochain(&pair, &pair.left.alg, &t, Bounds::new(8, 4)).passed());
        let free = FreeAssoc::<Q>::new(&[("u", 1), ("v", 1)]);
        let pair = BarPair::new(free.clone(), free);
        let t = shuffle_twisting_cochain(&pair);
        assert!(!is_twisting_cochain(&pair, &pair.left.alg, &t, Bounds::new(4, 3)).passed());
    }

    #[test]
    fn shuffle_map_of_two_letters() {
        let a = Bar::new(FreeGc::<Q>::polynomial(&[("x", 2)]));
        let e = Bar::new(FreeGc::<Q>::new(vec![crate::algebras::Generator::new(
            "u", 3,
        )]));
        let out = shuffle_map(&a, &e, &[vec![1]], &[vec![1]]);
        // (|x|−1)(|u|−1) = 2 is even
        assert_eq!(out.len(), 2);
        assert!(out.iter().all(|(_, c)| c.is_one()));
    }

    #[test]
    fn extension_of_tautological_cochain_is_identity() {
        let b = kx();
        let f = extend_to_dgc_map(&b, &b, &b.tautological());
        for w in b.basis(Bounds::new(10, 4)) {
            assert_eq!(f.apply(&w), Lin::basis(w.clone()));
        }
        let _ = cup_unit(&b, &b.alg);
    }
}
