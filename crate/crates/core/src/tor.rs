//! `Tor_B(A′, A″)` with its ring structure for polynomial `B`, computed from the
//! two-sided bar construction and, independently, from a Koszul complex.
//!
//! For polynomial algebras with zero differential both complexes are bigraded by
//! filtration `p` (word length, resp. number of exterior generators) and internal
//! degree `q`; the differential has bidegree `(−1, 0)` and the total degree is `q − p`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebras::{FreeGc, Generator, Mono};
use crate::bar::Word;
use crate::dg::{show_terms, Bounds, Dga, DgaExt, Elem, LinMap};
use crate::graded::Lin;
use crate::input::show_polynomial;
use crate::linalg::{CohomologyDegree, Echelon, Indexed, SparseVec};
use crate::product::{HgaTriple, Omega};
use crate::scalar::Field;
use crate::twisted::{bar_triple_map, strict_ladder};

pub const DEFAULT_DEGREE_BOUND: i32 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorError {
    #[error("algebra `{algebra}`: generator `{name}` has degree {degree}; polynomial generators need even degree ≥ 2")]
    BadGenerator {
        algebra: String,
        name: String,
        degree: i32,
    },
    #[error("map {map}: {got} images for {expected} source generators")]
    ImageCount {
        map: String,
        expected: usize,
        got: usize,
    },
    #[error("map {map}: image of `{generator}` is not homogeneous of degree {expected}")]
    ImageDegree {
        map: String,
        generator: String,
        expected: i32,
    },
    #[error("degree bound must be positive, got {0}")]
    Bound(i32),
}

/// A polynomial algebra on named even generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyPresentation {
    pub name: String,
    pub generators: Vec<Generator>,
}

impl PolyPresentation {
    pub fn new(name: impl Into<String>, gens: &[(&str, i32)]) -> Self {
        PolyPresentation {
            name: name.into(),
            generators: gens.iter().map(|(n, d)| Generator::new(*n, *d)).collect(),
        }
    }

    pub fn validate(&self) -> Result<(), TorError> {
        for g in &self.generators {
            if g.degree < 2 || g.degree % 2 != 0 {
                return Err(TorError::BadGenerator {
                    algebra: self.name.clone(),
                    name: g.name.clone(),
                    degree: g.degree,
                });
            }
        }
        Ok(())
    }

    pub fn algebra<K: Field>(&self) -> FreeGc<K> {
        FreeGc::new(self.generators.clone())
    }
}

/// The input diagram `A′ ← B → A″`, with generator images.
#[derive(Clone, Debug)]
pub struct TorProblem<K: Field> {
    pub base: FreeGc<K>,
    pub left: FreeGc<K>,
    pub right: FreeGc<K>,
    pub f_left: Vec<Elem<FreeGc<K>>>,
    pub f_right: Vec<Elem<FreeGc<K>>>,
}

fn check_images<K: Field>(
    map: &str,
    source: &FreeGc<K>,
    target: &FreeGc<K>,
    images: &[Elem<FreeGc<K>>],
) -> Result<(), TorError> {
    if images.len() != source.ngens() {
        return Err(TorError::ImageCount {
            map: map.into(),
            expected: source.ngens(),
            got: images.len(),
        });
    }
    for (g, img) in source.generators().iter().zip(images) {
        if img.keys().any(|m| target.degree(m) != g.degree) {
            return Err(TorError::ImageDegree {
                map: map.into(),
                generator: g.name.clone(),
                expected: g.degree,
            });
        }
    }
    Ok(())
}

/// Map out of a free graded-commutative algebra owning its target.
pub fn owned_map<K: Field>(
    target: FreeGc<K>,
    images: Vec<Elem<FreeGc<K>>>,
) -> LinMap<'static, Mono, Mono, K> {
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

impl<K: Field> TorProblem<K> {
    pub fn new(
        base: &PolyPresentation,
        left: &PolyPresentation,
        right: &PolyPresentation,
        f_left: Vec<Elem<FreeGc<K>>>,
        f_right: Vec<Elem<FreeGc<K>>>,
    ) -> Result<Self, TorError> {
        for p in [base, left, right] {
            p.validate()?;
        }
        let (b, l, r) = (base.algebra(), left.algebra(), right.algebra());
        check_images(&format!("{} → {}", base.name, left.name), &b, &l, &f_left)?;
        check_images(&format!("{} → {}", base.name, right.name), &b, &r, &f_right)?;
        Ok(TorProblem {
            base: b,
            left: l,
            right: r,
            f_left,
            f_right,
        })
    }

    pub fn left_map(&self) -> LinMap<'static, Mono, Mono, K> {
        owned_map(self.left.clone(), self.f_left.clone())
    }

    pub fn right_map(&self) -> LinMap<'static, Mono, Mono, K> {
        owned_map(self.right.clone(), self.f_right.clone())
    }

    /// The two-sided bar construction `B(A′, B, A″)` with its product.
    pub fn bar_triple(&self) -> HgaTriple<'static, FreeGc<K>, FreeGc<K>, FreeGc<K>> {
        HgaTriple::new(
            self.left.clone(),
            self.base.clone(),
            self.right.clone(),
            self.left_map(),
            self.right_map(),
        )
    }

    /// `A′ ⊗ Λ(y_1, …, y_n) ⊗ A″` with `|y_i| = |x_i| − 1` and `d y_i = f′(x_i) − f″(x_i)`.
    pub fn koszul_algebra(&self) -> FreeGc<K> {
        let (nl, nb) = (self.left.ngens(), self.base.ngens());
        let mut gens: Vec<Generator> = self.left.generators().to_vec();
        gens.extend(
            self.base
                .generators()
                .iter()
                .map(|g| Generator::new(format!("y_{}", g.name), g.degree - 1)),
        );
        gens.extend(self.right.generators().iter().cloned());
        let n = gens.len();
        let embed = |offset: usize, x: &Elem<FreeGc<K>>| {
            x.relabel(|m| {
                let mut out = vec![0; n];
                out[offset..offset + m.len()].copy_from_slice(m);
                out
            })
        };
        let mut k = FreeGc::new(gens);
        for i in 0..nb {
            let mut dy = embed(0, &self.f_left[i]);
            dy.sub_lin(&embed(nl + nb, &self.f_right[i]));
            k = k.with_differential(nl + i, dy);
        }
        k
    }
}

/// A cochain complex bigraded by filtration and internal degree, with a product.
pub trait Bigraded: Send + Sync {
    type K: Field;
    type B: crate::graded::Key;
    /// No basis elements with larger filtration in internal degree `q`.
    fn max_filtration(&self, q: i32) -> usize;
    fn basis(&self, p: usize, q: i32) -> Vec<Self::B>;
    fn d(&self, b: &Self::B) -> Lin<Self::B, Self::K>;
    fn mul(&self, x: &Self::B, y: &Self::B) -> Lin<Self::B, Self::K>;
    fn show(&self, b: &Self::B) -> String;
    /// Name of the algebra generator a filtration-0 basis element stands for, if any.
    fn generator_hint(&self, b: &Self::B) -> Option<String>;
}

fn single_generator<K: Field>(a: &FreeGc<K>, m: &Mono) -> Option<String> {
    let mut it = m.iter().enumerate().filter(|(_, e)| **e != 0);
    match (it.next(), it.next()) {
        (Some((i, 1)), None) => Some(a.generators()[i].name.clone()),
        _ => None,
    }
}

/// `B(A′, B, A″)` for polynomial inputs.
pub struct BarComplex<K: Field> {
    pub triple: HgaTriple<'static, FreeGc<K>, FreeGc<K>, FreeGc<K>>,
    min_letter: i32,
}

impl<K: Field> BarComplex<K> {
    pub fn new(problem: &TorProblem<K>) -> Self {
        let min_letter = problem
            .base
            .generators()
            .iter()
            .map(|g| g.degree)
            .min()
            .unwrap_or(0);
        BarComplex {
            triple: problem.bar_triple(),
            min_letter,
        }
    }

    fn words(&self, p: usize, q: i32) -> Vec<Word<Mono>> {
        fn rec<K: Field>(
            b: &FreeGc<K>,
            p: usize,
            q: i32,
            cur: &mut Word<Mono>,
            out: &mut Vec<Word<Mono>>,
        ) {
            if p == 0 {
                if q == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            for d in 1..=q {
                for m in b.basis(d) {
                    cur.push(m);
                    rec(b, p - 1, q - d, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(self.triple.mid(), p, q, &mut Vec::new(), &mut out);
        out
    }
}

impl<K: Field> Bigraded for BarComplex<K> {
    type K = K;
    type B = Omega<FreeGc<K>, FreeGc<K>, FreeGc<K>>;

    fn max_filtration(&self, q: i32) -> usize {
        if self.min_letter == 0 {
            0
        } else {
            (q / self.min_letter) as usize
        }
    }

    fn basis(&self, p: usize, q: i32) -> Vec<Self::B> {
        let (l, r) = (self.triple.left(), self.triple.right());
        let mut out = Vec::new();
        for q1 in 0..=q {
            for q2 in 0..=q - q1 {
                let words = self.words(p, q2);
                if words.is_empty() {
                    continue;
                }
                for x in l.basis(q1) {
                    for w in &words {
                        for y in r.basis(q - q1 - q2) {
                            out.push((x.clone(), w.clone(), y));
                        }
                    }
                }
            }
        }
        out
    }

    fn d(&self, b: &Self::B) -> Lin<Self::B, K> {
        self.triple.bar.d(b)
    }

    fn mul(&self, x: &Self::B, y: &Self::B) -> Lin<Self::B, K> {
        self.triple.mu_tilde(x, y)
    }

    fn show(&self, b: &Self::B) -> String {
        self.triple.bar.show(b)
    }

    fn generator_hint(&self, (x, w, y): &Self::B) -> Option<String> {
        let (l, r) = (self.triple.left(), self.triple.right());
        match (w.is_empty(), l.is_unit(x), r.is_unit(y)) {
            (true, false, true) => single_generator(l, x),
            (true, true, false) => single_generator(r, y),
            _ => None,
        }
    }
}

/// The Koszul complex `A′ ⊗ Λ(y) ⊗ A″`.
pub struct KoszulComplex<K: Field> {
    pub alg: FreeGc<K>,
    exterior: std::ops::Range<usize>,
}

impl<K: Field> KoszulComplex<K> {
    pub fn new(problem: &TorProblem<K>) -> Self {
        let nl = problem.left.ngens();
        KoszulComplex {
            alg: problem.koszul_algebra(),
            exterior: nl..nl + problem.base.ngens(),
        }
    }

    fn filtration(&self, m: &Mono) -> usize {
        m[self.exterior.clone()].iter().map(|e| *e as usize).sum()
    }
}

impl<K: Field> Bigraded for KoszulComplex<K> {
    type K = K;
    type B = Mono;

    fn max_filtration(&self, _q: i32) -> usize {
        self.exterior.len()
    }

    fn basis(&self, p: usize, q: i32) -> Vec<Mono> {
        self.alg
            .basis(q - p as i32)
            .into_iter()
            .filter(|m| self.filtration(m) == p)
            .collect()
    }

    fn d(&self, b: &Mono) -> Lin<Mono, K> {
        self.alg.d(b)
    }

    fn mul(&self, x: &Mono, y: &Mono) -> Lin<Mono, K> {
        self.alg.mul(x, y)
    }

    fn show(&self, b: &Mono) -> String {
        self.alg.show(b)
    }

    fn generator_hint(&self, b: &Mono) -> Option<String> {
        (self.filtration(b) == 0)
            .then(|| single_generator(&self.alg, b))
            .flatten()
    }
}

/// Filtration `p` and internal degree `q`.
pub type Bidegree = (usize, i32);

fn total((p, q): Bidegree) -> i32 {
    q - p as i32
}

struct Piece<B: crate::graded::Key, K: Field> {
    basis: Indexed<B>,
    cohomology: CohomologyDegree<K>,
}

/// Cohomology of a [`Bigraded`] complex in total degrees `0..=bound`.
pub struct Computed<C: Bigraded> {
    pub complex: C,
    pub bound: i32,
    pieces: BTreeMap<Bidegree, Piece<C::B, C::K>>,
    euler: Vec<EulerLine>,
}

/// Alternating sums over filtrations in one internal degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerLine {
    pub internal: i32,
    pub chains: i64,
    pub cohomology: i64,
}

impl<C: Bigraded> Computed<C> {
    pub fn new(complex: C, bound: i32) -> Result<Self, TorError> {
        if bound <= 0 {
            return Err(TorError::Bound(bound));
        }
        let mut pieces = BTreeMap::new();
        let mut euler = Vec::new();
        let mut q = 0;
        while q - complex.max_filtration(q) as i32 <= bound {
            let top = complex.max_filtration(q);
            let bases: Vec<Indexed<C::B>> = (0..=top + 1)
                .map(|p| Indexed::new(complex.basis(p, q)))
                .collect();
            let images = |p: usize, target: &Indexed<C::B>| -> Vec<SparseVec<C::K>> {
                bases[p]
                    .items
                    .iter()
                    .map(|b| target.coords(&complex.d(b)))
                    .collect()
            };
            let (mut chains, mut cohomology) = (0i64, 0i64);
            for p in 0..=top {
                let d_out = if p == 0 {
                    vec![Lin::zero(); bases[0].len()]
                } else {
                    images(p, &bases[p - 1])
                };
                let boundaries = images(p + 1, &bases[p]);
                let h = CohomologyDegree::compute(bases[p].len(), &boundaries, &d_out);
                let sign = if p % 2 == 0 { 1 } else { -1 };
                chains += sign * bases[p].len() as i64;
                cohomology += sign * h.rank() as i64;
                if q - p as i32 <= bound && q - p as i32 >= 0 {
                    pieces.insert(
                        (p, q),
                        Piece {
                            basis: bases[p].clone(),
                            cohomology: h,
                        },
                    );
                }
            }
            euler.push(EulerLine {
                internal: q,
                chains,
                cohomology,
            });
            q += 1;
        }
        Ok(Computed {
            complex,
            bound,
            pieces,
            euler,
        })
    }

    pub fn rank(&self, b: Bidegree) -> usize {
        self.pieces.get(&b).map_or(0, |p| p.cohomology.rank())
    }

    pub fn bidegrees(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.pieces.keys().copied()
    }

    /// Per internal degree, `Σ(−1)^p dim C_{p,q}` against `Σ(−1)^p dim H_{p,q}`.
    pub fn euler_lines(&self) -> &[EulerLine] {
        &self.euler
    }

    pub fn euler_consistent(&self) -> bool {
        self.euler.iter().all(|e| e.chains == e.cohomology)
    }

    pub fn representative(&self, b: Bidegree, i: usize) -> Lin<C::B, C::K> {
        let piece = &self.pieces[&b];
        piece.basis.element(&piece.cohomology.reps[i])
    }

    /// Coordinates of the class of a cocycle of bidegree `b`.
    pub fn class_of(&self, b: Bidegree, z: &Lin<C::B, C::K>) -> Option<SparseVec<C::K>> {
        match self.pieces.get(&b) {
            Some(piece) => piece.cohomology.class_of(&piece.basis.coords(z)),
            None => z.is_zero().then(Lin::zero),
        }
    }

    pub fn mul_lin(&self, x: &Lin<C::B, C::K>, y: &Lin<C::B, C::K>) -> Lin<C::B, C::K> {
        let mut out = Lin::zero();
        for (s, c) in x.iter() {
            for (t, e) in y.iter() {
                out.add_scaled(&self.complex.mul(s, t), &(c.clone() * e.clone()));
            }
        }
        out
    }

    /// Classes ordered by total degree, then bidegree, then index.
    pub fn classes(&self) -> Vec<(Bidegree, usize)> {
        let mut out: Vec<(Bidegree, usize)> = self
            .pieces
            .iter()
            .flat_map(|(b, piece)| (0..piece.cohomology.rank()).map(move |i| (*b, i)))
            .collect();
        out.sort_by_key(|((p, q), i)| (total((*p, *q)), *p, *q, *i));
        out
    }

    /// The computed groups, classes and products.
    pub fn result(&self) -> TorResult<C::K> {
        let classes = self.classes();
        let index: BTreeMap<(Bidegree, usize), usize> =
            classes.iter().enumerate().map(|(n, c)| (*c, n)).collect();
        let reps: Vec<Lin<C::B, C::K>> = classes
            .iter()
            .map(|(b, i)| self.representative(*b, *i))
            .collect();
        let mut products = BTreeMap::new();
        for (n, (b1, _)) in classes.iter().enumerate() {
            for (m, (b2, _)) in classes.iter().enumerate().skip(n) {
                let target = (b1.0 + b2.0, b1.1 + b2.1);
                if total(target) > self.bound {
                    continue;
                }
                let z = self.mul_lin(&reps[n], &reps[m]);
                let coords = self
                    .class_of(target, &z)
                    .expect("products of cocycles are cocycles");
                let v: Vec<(usize, C::K)> = coords
                    .iter()
                    .map(|(i, c)| (index[&(target, *i)], c.clone()))
                    .collect();
                products.insert((n, m), v);
            }
        }
        let classes = classes
            .iter()
            .zip(&reps)
            .map(|(((p, q), _), rep)| TorClass {
                filtration: *p,
                internal: *q,
                degree: total((*p, *q)),
                representative: show_terms(rep, |b| self.complex.show(b)),
                name_hint: match rep.iter().next() {
                    Some((b, _)) if rep.len() == 1 => self.complex.generator_hint(b),
                    _ => None,
                },
            })
            .collect();
        TorResult {
            bound: self.bound,
            classes,
            products,
            euler: self.euler.clone(),
        }
    }
}

/// One basis class of `Tor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorClass {
    pub filtration: usize,
    pub internal: i32,
    pub degree: i32,
    pub representative: String,
    /// Algebra generator named by a single-term representative.
    pub name_hint: Option<String>,
}

/// Graded ranks, classes and the multiplication table up to `bound`.
#[derive(Clone, Debug)]
pub struct TorResult<K: Field> {
    pub bound: i32,
    pub classes: Vec<TorClass>,
    /// `(i, j) ↦ class_i · class_j` for `i ≤ j`, in class coordinates.
    pub products: BTreeMap<(usize, usize), Vec<(usize, K)>>,
    pub euler: Vec<EulerLine>,
}

impl<K: Field> TorResult<K> {
    /// Rank in each total degree `0..=bound`: the Poincaré series coefficients.
    pub fn poincare_series(&self) -> Vec<usize> {
        let mut out = vec![0; self.bound as usize + 1];
        for c in &self.classes {
            out[c.degree as usize] += 1;
        }
        out
    }

    /// Ranks keyed by `(−filtration, internal degree)`.
    pub fn bigraded_ranks(&self) -> BTreeMap<(i32, i32), usize> {
        let mut out = BTreeMap::new();
        for c in &self.classes {
            *out.entry((-(c.filtration as i32), c.internal)).or_insert(0) += 1;
        }
        out
    }

    /// `class_i · class_j` in class coordinates; zero beyond the bound.
    pub fn product(&self, i: usize, j: usize) -> Lin<usize, K> {
        let key = if i <= j { (i, j) } else { (j, i) };
        let mut v: Lin<usize, K> = self
            .products
            .get(&key)
            .map_or_else(Lin::zero, |v| v.iter().cloned().collect());
        if i > j && self.classes[i].degree * self.classes[j].degree % 2 != 0 {
            v = v.negated();
        }
        v
    }

    pub fn product_lin(&self, x: &Lin<usize, K>, y: &Lin<usize, K>) -> Lin<usize, K> {
        let mut out = Lin::zero();
        for (i, c) in x.iter() {
            for (j, e) in y.iter() {
                out.add_scaled(&self.product(*i, *j), &(c.clone() * e.clone()));
            }
        }
        out
    }

    pub fn degree_of_class(&self, i: usize) -> i32 {
        self.classes[i].degree
    }

    pub fn is_concentrated_in_filtration_zero(&self) -> bool {
        self.classes.iter().all(|c| c.filtration == 0)
    }

    /// `(−1)^{|x||y|} y x = x y` on all computed pairs.
    pub fn is_graded_commutative(&self) -> bool {
        (0..self.classes.len()).all(|i| {
            (i..self.classes.len()).all(|j| {
                let odd = self.classes[i].degree * self.classes[j].degree % 2 != 0;
                let mut lhs = self.product(j, i);
                if odd {
                    lhs = lhs.negated();
                }
                lhs == self.product(i, j)
            })
        })
    }

    pub fn euler_consistent(&self) -> bool {
        self.euler.iter().all(|e| e.chains == e.cohomology)
    }
}

/// First bidegree where two results disagree.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("ranks disagree at (−p, q) = ({neg_filtration}, {internal}): bar {bar}, Koszul {koszul}")]
pub struct Disagreement {
    pub neg_filtration: i32,
    pub internal: i32,
    pub bar: usize,
    pub koszul: usize,
}

pub fn compare_ranks<K: Field>(
    bar: &TorResult<K>,
    koszul: &TorResult<K>,
) -> Result<(), Disagreement> {
    let (rb, rk) = (bar.bigraded_ranks(), koszul.bigraded_ranks());
    let mut keys: Vec<(i32, i32)> = rb.keys().chain(rk.keys()).copied().collect();
    keys.sort_by_key(|(p, q)| (q + p, -p, *q));
    keys.dedup();
    for (p, q) in keys {
        let (b, k) = (
            rb.get(&(p, q)).copied().unwrap_or(0),
            rk.get(&(p, q)).copied().unwrap_or(0),
        );
        if b != k {
            return Err(Disagreement {
                neg_filtration: p,
                internal: q,
                bar: b,
                koszul: k,
            });
        }
    }
    Ok(())
}

pub fn bar_computation<K: Field>(
    problem: &TorProblem<K>,
    bound: i32,
) -> Result<Computed<BarComplex<K>>, TorError> {
    Computed::new(BarComplex::new(problem), bound)
}

pub fn koszul_computation<K: Field>(
    problem: &TorProblem<K>,
    bound: i32,
) -> Result<Computed<KoszulComplex<K>>, TorError> {
    Computed::new(KoszulComplex::new(problem), bound)
}

/// `Tor` from the two-sided bar construction, products by `μ̃`.
pub fn bar_tor<K: Field>(problem: &TorProblem<K>, bound: i32) -> Result<TorResult<K>, TorError> {
    Ok(bar_computation(problem, bound)?.result())
}

/// `Tor` from the Koszul complex, products by its commutative multiplication.
pub fn koszul_tor<K: Field>(problem: &TorProblem<K>, bound: i32) -> Result<TorResult<K>, TorError> {
    Ok(koszul_computation(problem, bound)?.result())
}

/// Products of filtration-0 bar classes agree with the product of `A′ ⊗_B A″`,
/// read off through `a′[]a″ ↦ a′a″` into the Koszul complex. Returns the number of
/// pairs checked, or the first failing pair.
pub fn check_tor0_products<K: Field>(
    bar: &Computed<BarComplex<K>>,
    koszul: &Computed<KoszulComplex<K>>,
) -> Result<usize, String> {
    let l = bar.complex.triple.left().ngens();
    let nb = bar.complex.triple.mid().ngens();
    let to_koszul = |z: &Lin<Omega<FreeGc<K>, FreeGc<K>, FreeGc<K>>, K>| -> Lin<Mono, K> {
        z.relabel(|(x, w, y)| {
            assert!(w.is_empty());
            let mut m = x.clone();
            m.extend(std::iter::repeat_n(0, nb));
            m.extend_from_slice(y);
            debug_assert_eq!(m.len(), l + nb + y.len());
            m
        })
    };
    let zero: Vec<(Bidegree, usize)> = bar
        .classes()
        .into_iter()
        .filter(|((p, _), _)| *p == 0)
        .collect();
    let mut n = 0;
    for (i, (b1, c1)) in zero.iter().enumerate() {
        for (b2, c2) in &zero[i..] {
            let target = (0, b1.1 + b2.1);
            if total(target) > bar.bound {
                continue;
            }
            let (x, y) = (bar.representative(*b1, *c1), bar.representative(*b2, *c2));
            let via_bar = koszul.class_of(target, &to_koszul(&bar.mul_lin(&x, &y)));
            let via_ring = koszul.class_of(target, &koszul.mul_lin(&to_koszul(&x), &to_koszul(&y)));
            if via_bar != via_ring {
                return Err(format!(
                    "{} · {}",
                    show_terms(&x, |b| bar.complex.show(b)),
                    show_terms(&y, |b| bar.complex.show(b))
                ));
            }
            n += 1;
        }
    }
    Ok(n)
}

/// The map on `Tor` induced by a commuting ladder of algebra maps, as
/// `class ↦ class` coordinates of the target result, checked to be multiplicative
/// on all pairs of source classes. Returns the number of pairs checked.
pub fn check_induced_map<K: Field>(
    source: &Computed<BarComplex<K>>,
    target: &Computed<BarComplex<K>>,
    g_left: &LinMap<'_, Mono, Mono, K>,
    g: &LinMap<'_, Mono, Mono, K>,
    g_right: &LinMap<'_, Mono, Mono, K>,
) -> Result<usize, String> {
    let (s, t) = (&source.complex.triple, &target.complex.triple);
    let bounds = Bounds::new(source.bound.min(target.bound), source.bound.max(1) as usize);
    let ladder = strict_ladder(&s.bar.coalg, &t.bar.coalg, g_left, g, g_right);
    let map = bar_triple_map(&s.bar, &t.bar, ladder, bounds).map_err(|e| e.to_string())?;
    let classes = source.classes();
    let image = |b: Bidegree, z: &Lin<Omega<FreeGc<K>, FreeGc<K>, FreeGc<K>>, K>| {
        target
            .class_of(b, &map.apply_lin(z))
            .ok_or_else(|| "image of a cocycle is not a cocycle".to_string())
    };
    let mut n = 0;
    for (i, (b1, c1)) in classes.iter().enumerate() {
        for (b2, c2) in &classes[i..] {
            let b = (b1.0 + b2.0, b1.1 + b2.1);
            if total(b) > source.bound.min(target.bound) {
                continue;
            }
            let (x, y) = (
                source.representative(*b1, *c1),
                source.representative(*b2, *c2),
            );
            let lhs = image(b, &source.mul_lin(&x, &y))?;
            let (fx, fy) = (map.apply_lin(&x), map.apply_lin(&y));
            let rhs = target
                .class_of(b, &target.mul_lin(&fx, &fy))
                .ok_or("product of images is not a cocycle")?;
            if lhs != rhs {
                return Err(format!(
                    "{} · {}",
                    show_terms(&x, |b| source.complex.show(b)),
                    show_terms(&y, |b| source.complex.show(b))
                ));
            }
            n += 1;
        }
    }
    Ok(n)
}

/// A graded-commutative presentation valid up to a degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    pub generators: Vec<Generator>,
    pub relations: Vec<String>,
    pub valid_up_to: i32,
    pub warnings: Vec<String>,
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let even: Vec<&str> = self
            .generators
            .iter()
            .filter(|g| g.degree % 2 == 0)
            .map(|g| g.name.as_str())
            .collect();
        let odd: Vec<&str> = self
            .generators
            .iter()
            .filter(|g| g.degree % 2 != 0)
            .map(|g| g.name.as_str())
            .collect();
        let mut parts = Vec::new();
        if !even.is_empty() {
            parts.push(format!("k[{}]", even.join(",")));
        }
        if !odd.is_empty() {
            parts.push(format!("Λ({})", odd.join(",")));
        }
        if parts.is_empty() {
            parts.push("k".into());
        }
        write!(f, "{}", parts.join(" ⊗ "))?;
        if !self.relations.is_empty() {
            write!(f, "/({})", self.relations.join(", "))?;
        }
        Ok(())
    }
}

fn generator_name(class: &TorClass, taken: &[Generator]) -> String {
    let base = class.name_hint.clone().unwrap_or_else(|| {
        format!(
            "{}{}",
            if class.degree % 2 == 0 { "u" } else { "y" },
            class.degree
        )
    });
    let mut name = base.clone();
    let mut k = 1;
    while taken.iter().any(|g| g.name == name) {
        k += 1;
        name = format!("{base}_{k}");
    }
    name
}

/// Relation polynomial with its leading (largest) monomial normalised to 1, listed
/// from the largest monomial down.
fn show_relation<K: Field>(p: &FreeGc<K>, r: &Lin<Mono, K>) -> String {
    let (_, lead) = r.iter().next_back().expect("relations are nonzero");
    show_polynomial(p, &r.scaled(&lead.inv().expect("nonzero")))
}

/// Minimal generators and relations of the class ring, by exact linear algebra
/// in each degree up to the bound.
pub fn ring_presentation<K: Field>(result: &TorResult<K>) -> RingPresentation {
    let bound = result.bound;
    let by_degree = |n: i32| -> Vec<usize> {
        (0..result.classes.len())
            .filter(|i| result.classes[*i].degree == n)
            .collect()
    };
    let mut gens: Vec<Generator> = Vec::new();
    let mut gen_values: Vec<Lin<usize, K>> = Vec::new();
    let mut warnings = Vec::new();
    for n in 1..=bound {
        // decomposables: products of classes in positive degrees summing to n
        let mut span = Echelon::new();
        for i in 0..result.classes.len() {
            for j in i..result.classes.len() {
                let (di, dj) = (result.degree_of_class(i), result.degree_of_class(j));
                if di > 0 && dj > 0 && di + dj == n {
                    span.insert(&result.product(i, j), &Lin::zero());
                }
            }
        }
        let mut fresh: Vec<(Generator, Lin<usize, K>)> = Vec::new();
        for i in by_degree(n) {
            let v = Lin::basis(i);
            if span.insert(&v, &Lin::zero()).is_some() {
                let taken: Vec<Generator> = gens
                    .iter()
                    .chain(fresh.iter().map(|(g, _)| g))
                    .cloned()
                    .collect();
                fresh.push((
                    Generator::new(generator_name(&result.classes[i], &taken), n),
                    v,
                ));
            }
        }
        fresh.sort_by(|a, b| a.0.name.cmp(&b.0.name));
        for (g, v) in fresh {
            gens.push(g);
            gen_values.push(v);
        }
    }
    let p = FreeGc::<K>::new(gens.clone());
    let one = (0..result.classes.len()).find(|i| result.classes[*i].degree == 0);
    let value = |m: &Mono| -> Lin<usize, K> {
        let mut acc: Lin<usize, K> = one.map_or_else(Lin::zero, Lin::basis);
        for (g, e) in m.iter().enumerate() {
            for _ in 0..*e {
                acc = result.product_lin(&acc, &gen_values[g]);
            }
        }
        acc
    };
    let mut relations: Vec<(i32, Lin<Mono, K>)> = Vec::new();
    let mut shown = Vec::new();
    for n in 1..=bound {
        let monos = p.basis(n);
        if monos.is_empty() {
            continue;
        }
        let cols: Vec<SparseVec<K>> = monos.iter().map(&value).collect();
        let index = Indexed::new(monos.clone());
        let mut ideal = Echelon::new();
        for (k, r) in &relations {
            for m in p.basis(n - k) {
                ideal.insert(&index.coords(&p.mul_lin(&Lin::basis(m), r)), &Lin::zero());
            }
        }
        for kv in crate::linalg::kernel(&cols) {
            if ideal.insert(&kv, &Lin::zero()).is_some() {
                let r = index.element(&kv);
                shown.push(show_relation(&p, &r));
                relations.push((n, r));
            }
        }
    }
    for g in &gens {
        if g.degree % 2 == 0 && 2 * g.degree > bound {
            warnings.push(format!(
                "relations of {} beyond degree {bound} are not seen; raise the degree bound",
                g.name
            ));
        }
    }
    if result.poincare_series().last().is_some_and(|r| *r > 0) {
        warnings.push(format!(
            "Tor is nonzero in degree {bound}; the series is truncated"
        ));
    }
    RingPresentation {
        generators: gens,
        relations: shown,
        valid_up_to: bound,
        warnings,
    }
}

/// `Σ c_n t^n` rendered as text.
pub fn show_series(coeffs: &[usize]) -> String {
    let mut parts = Vec::new();
    for (n, c) in coeffs.iter().enumerate() {
        if *c == 0 {
            continue;
        }
        let t = match n {
            0 => String::new(),
            1 => "t".into(),
            n => format!("t^{n}"),
        };
        parts.push(match (c, n) {
            (c, 0) => c.to_string(),
            (1, _) => t,
            (c, _) => format!("{c}{t}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    fn poly(name: &str, gens: &[(&str, i32)]) -> PolyPresentation {
        PolyPresentation::new(name, gens)
    }

    fn gen(a: &FreeGc<Q>, i: usize) -> Elem<FreeGc<Q>> {
        a.gen_elem(i)
    }

    fn point() -> PolyPresentation {
        poly("pt", &[])
    }

    fn su2_point_point() -> TorProblem<Q> {
        TorProblem::new(
            &poly("BSU2", &[("x", 4)]),
            &point(),
            &point(),
            vec![Lin::zero()],
            vec![Lin::zero()],
        )
        .unwrap()
    }

    fn su2_point_circle() -> TorProblem<Q> {
        let t: FreeGc<Q> = FreeGc::polynomial(&[("t", 2)]);
        let t2 = t.mul_lin(&gen(&t, 0), &gen(&t, 0));
        TorProblem::new(
            &poly("BSU2", &[("x", 4)]),
            &point(),
            &poly("BT", &[("t", 2)]),
            vec![Lin::zero()],
            vec![t2],
        )
        .unwrap()
    }

    fn su3_flag() -> TorProblem<Q> {
        let r: FreeGc<Q> = FreeGc::polynomial(&[("t1", 2), ("t2", 2)]);
        let (t1, t2) = (gen(&r, 0), gen(&r, 1));
        let t3 = {
            let mut s = t1.clone();
            s.add_lin(&t2);
            s.negated()
        };
        let mut e2 = r.mul_lin(&t1, &t2);
        e2.add_lin(&r.mul_lin(&t1, &t3));
        e2.add_lin(&r.mul_lin(&t2, &t3));
        let e3 = r.mul_all(&[t1, t2, t3]);
        TorProblem::new(
            &poly("BSU3", &[("c2", 4), ("c3", 6)]),
            &point(),
            &poly("BT", &[("t1", 2), ("t2", 2)]),
            vec![Lin::zero(), Lin::zero()],
            vec![e2, e3],
        )
        .unwrap()
    }

    fn su2_torus_torus() -> TorProblem<Q> {
        let (l, r): (FreeGc<Q>, FreeGc<Q>) = (
            FreeGc::polynomial(&[("t1", 2)]),
            FreeGc::polynomial(&[("t2", 2)]),
        );
        TorProblem::new(
            &poly("BSU2", &[("x", 4)]),
            &poly("BT1", &[("t1", 2)]),
            &poly("BT2", &[("t2", 2)]),
            vec![l.mul_lin(&gen(&l, 0), &gen(&l, 0))],
            vec![r.mul_lin(&gen(&r, 0), &gen(&r, 0))],
        )
        .unwrap()
    }

    fn padded(head: &[usize], bound: i32) -> Vec<usize> {
        let mut v = head.to_vec();
        v.resize(bound as usize + 1, 0);
        v
    }

    fn both(problem: &TorProblem<Q>, bound: i32) -> (TorResult<Q>, TorResult<Q>) {
        let (b, k) = (
            bar_tor(problem, bound).unwrap(),
            koszul_tor(problem, bound).unwrap(),
        );
        assert_eq!(compare_ranks(&b, &k), Ok(()));
        assert!(b.euler_consistent() && k.euler_consistent());
        assert!(b.is_graded_commutative() && k.is_graded_commutative());
        (b, k)
    }

    #[test]
    fn three_sphere() {
        let (b, _) = both(&su2_point_point(), 16);
        assert_eq!(b.poincare_series(), padded(&[1, 0, 0, 1], 16));
        assert_eq!(show_series(&b.poincare_series()), "1 + t^3");
        let p = ring_presentation(&b);
        assert_eq!(p.to_string(), "Λ(y3)");
        assert!(p.warnings.is_empty());
    }

    #[test]
    fn two_sphere() {
        let (b, k) = both(&su2_point_circle(), 16);
        assert_eq!(b.poincare_series(), padded(&[1, 0, 1], 16));
        assert_eq!(ring_presentation(&b).to_string(), "k[t]/(t^2)");
        assert_eq!(ring_presentation(&k).to_string(), "k[t]/(t^2)");
    }

    #[test]
    fn flag_manifold_of_su3() {
        let (b, k) = both(&su3_flag(), 16);
        assert_eq!(b.poincare_series(), padded(&[1, 0, 2, 0, 2, 0, 1], 16));
        let p = ring_presentation(&b);
        assert_eq!(
            p.generators.iter().map(|g| g.degree).collect::<Vec<_>>(),
            vec![2, 2]
        );
        assert_eq!(p.relations.len(), 2, "{p}");
        assert_eq!(p, ring_presentation(&k));
    }

    #[test]
    fn torus_biquotient_is_concentrated_in_filtration_zero() {
        let (b, _) = both(&su2_torus_torus(), 16);
        let mut expected = vec![1];
        for n in 1..=16 {
            expected.push(if n % 2 == 0 { 2 } else { 0 });
        }
        assert_eq!(b.poincare_series(), expected);
        assert!(b.is_concentrated_in_filtration_zero());
        let p = ring_presentation(&b);
        assert_eq!(p.to_string(), "k[t1,t2]/(t1^2 - t2^2)");
        assert!(!p.warnings.is_empty());
    }

    #[test]
    fn identity_maps_leave_only_the_zeroth_column() {
        let b = poly("B", &[("x", 4)]);
        let a: FreeGc<Q> = b.algebra();
        let problem = TorProblem::new(&b, &b, &b, vec![gen(&a, 0)], vec![gen(&a, 0)]).unwrap();
        let (r, _) = both(&problem, 16);
        let expected: Vec<usize> = (0..=16).map(|n| usize::from(n % 4 == 0)).collect();
        assert_eq!(r.poincare_series(), expected);
        assert!(r.is_concentrated_in_filtration_zero());
    }

    #[test]
    fn diagonal_gives_the_algebra_tensor_an_exterior_algebra() {
        let a: FreeGc<Q> = FreeGc::polynomial(&[("x", 4)]);
        let x = gen(&a, 0);
        let problem = TorProblem::new(
            &poly("BxB", &[("x1", 4), ("x2", 4)]),
            &poly("B", &[("x", 4)]),
            &poly("B", &[("x", 4)]),
            vec![x.clone(), x.clone()],
            vec![x.clone(), x],
        )
        .unwrap();
        let (r, _) = both(&problem, 16);
        let expected: Vec<usize> = (0..=16)
            .map(|n| usize::from(n % 4 == 0 || n % 4 == 3))
            .collect();
        assert_eq!(r.poincare_series(), expected);
        assert_eq!(ring_presentation(&r).to_string(), "k[x] ⊗ Λ(y3)");
    }

    #[test]
    fn filtration_zero_products_are_the_quotient_ring() {
        for problem in [su2_point_circle(), su3_flag(), su2_torus_torus()] {
            let (b, k) = (
                bar_computation(&problem, 12).unwrap(),
                koszul_computation(&problem, 12).unwrap(),
            );
            assert!(check_tor0_products(&b, &k).unwrap() > 0);
        }
    }

    #[test]
    fn augmenting_a_side_induces_a_ring_map() {
        let (source, target) = (su2_torus_torus(), su2_point_circle());
        let (s, t) = (
            bar_computation(&source, 10).unwrap(),
            bar_computation(&target, 10).unwrap(),
        );
        let aug = crate::algebras::augmentation_map(&source.left);
        let id = crate::algebras::identity_map::<FreeGc<Q>>;
        // t2 in both right-hand algebras
        assert!(check_induced_map(&s, &t, &aug, &id(), &id()).unwrap() > 0);
    }

    #[test]
    fn malformed_problems_are_refused() {
        let odd = poly("B", &[("x", 3)]);
        assert!(matches!(
            TorProblem::<Q>::new(
                &odd,
                &point(),
                &point(),
                vec![Lin::zero()],
                vec![Lin::zero()]
            ),
            Err(TorError::BadGenerator { .. })
        ));
        let t = poly("BT", &[("t", 2)]);
        let a: FreeGc<Q> = t.algebra();
        assert!(matches!(
            TorProblem::new(
                &poly("B", &[("x", 4)]),
                &point(),
                &t,
                vec![Lin::zero()],
                vec![gen(&a, 0)]
            ),
            Err(TorError::ImageDegree { .. })
        ));
    }
}
