//! Sparse linear combinations and the Koszul sign engine.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::hash::Hash;

use crate::scalar::Field;

/// Requirements on basis keys.
pub trait Key: Clone + Ord + Eq + Hash + fmt::Debug + Send + Sync + 'static {}
impl<T: Clone + Ord + Eq + Hash + fmt::Debug + Send + Sync + 'static> Key for T {}

/// Finite linear combination of basis elements. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Lin<B, K> {
    terms: BTreeMap<B, K>,
}

impl<B: Key, K: Field> Default for Lin<B, K> {
    fn default() -> Self {
        Lin::zero()
    }
}

impl<B: Key, K: Field> Lin<B, K> {
    pub fn zero() -> Self {
        Lin {
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(b: B) -> Self {
        Lin::term(b, K::one())
    }

    pub fn term(b: B, c: K) -> Self {
        let mut l = Lin::zero();
        l.add_term(b, c);
        l
    }

    /// `(-1)^odd · b`.
    pub fn signed(b: B, odd: bool) -> Self {
        Lin::term(b, K::sign(odd))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &B) -> K {
        self.terms.get(b).cloned().unwrap_or_else(K::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, B, K> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, b: B, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Lin<B, K>, c: &K) {
        if c.is_zero() {
            return;
        }
        for (b, x) in other.iter() {
            self.add_term(b.clone(), x.clone() * c.clone());
        }
    }

    /// `self += (-1)^odd · other`.
    pub fn add_signed(&mut self, other: &Lin<B, K>, odd: bool) {
        for (b, x) in other.iter() {
            let x = if odd { -x.clone() } else { x.clone() };
            self.add_term(b.clone(), x);
        }
    }

    pub fn add_lin(&mut self, other: &Lin<B, K>) {
        self.add_signed(other, false);
    }

    pub fn sub_lin(&mut self, other: &Lin<B, K>) {
        self.add_signed(other, true);
    }

    pub fn scaled(&self, c: &K) -> Self {
        let mut out = Lin::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn negated(&self) -> Self {
        let mut out = Lin::zero();
        out.add_signed(self, true);
        out
    }

    /// Linear extension of `f`.
    pub fn map<C: Key>(&self, mut f: impl FnMut(&B) -> Lin<C, K>) -> Lin<C, K> {
        let mut out = Lin::zero();
        for (b, c) in self.iter() {
            out.add_scaled(&f(b), c);
        }
        out
    }

    /// Relabel basis elements one-to-one (or many-to-one).
    pub fn relabel<C: Key>(&self, mut f: impl FnMut(&B) -> C) -> Lin<C, K> {
        let mut out = Lin::zero();
        for (b, c) in self.iter() {
            out.add_term(f(b), c.clone());
        }
        out
    }

    /// Bilinear extension of `f`.
    pub fn bilinear<C: Key, D: Key>(
        &self,
        other: &Lin<C, K>,
        mut f: impl FnMut(&B, &C) -> Lin<D, K>,
    ) -> Lin<D, K> {
        let mut out = Lin::zero();
        for (b, x) in self.iter() {
            for (c, y) in other.iter() {
                out.add_scaled(&f(b, c), &(x.clone() * y.clone()));
            }
        }
        out
    }

    pub fn into_terms(self) -> BTreeMap<B, K> {
        self.terms
    }
}

impl<B: Key, K: Field> FromIterator<(B, K)> for Lin<B, K> {
    fn from_iter<I: IntoIterator<Item = (B, K)>>(iter: I) -> Self {
        let mut l = Lin::zero();
        for (b, c) in iter {
            l.add_term(b, c);
        }
        l
    }
}

impl<B: Key, K: Field> fmt::Debug for Lin<B, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}·{b:?}")?;
        }
        Ok(())
    }
}

/// Koszul sign of a permutation acting on graded symbols.
///
/// `target[i]` is the position to which the symbol at position `i` moves.
/// Returns `true` when the sign is −1.
pub fn koszul_parity(target: &[usize], degrees: &[i32]) -> bool {
    assert_eq!(
        target.len(),
        degrees.len(),
        "permutation/degree length mismatch"
    );
    let mut odd = false;
    for i in 0..target.len() {
        if degrees[i] & 1 == 0 {
            continue;
        }
        for j in i + 1..target.len() {
            if target[i] > target[j] && degrees[j] & 1 != 0 {
                odd = !odd;
            }
        }
    }
    odd
}

/// Checked variant of [`koszul_parity`] returning the sign as a scalar.
pub fn koszul_sign<K: Field>(target: &[usize], degrees: &[i32]) -> Result<K, String> {
    if target.len() != degrees.len() {
        return Err(format!(
            "permutation has {} entries but {} degrees were given",
            target.len(),
            degrees.len()
        ));
    }
    let mut seen = vec![false; target.len()];
    for &t in target {
        if t >= target.len() || seen[t] {
            return Err("not a permutation".into());
        }
        seen[t] = true;
    }
    Ok(K::sign(koszul_parity(target, degrees)))
}

/// The degrees after applying `target` to `degrees`.
pub fn permute<T: Clone>(target: &[usize], items: &[T]) -> Vec<T> {
    let mut out: Vec<Option<T>> = vec![None; items.len()];
    for (i, t) in target.iter().enumerate() {
        out[*t] = Some(items[i].clone());
    }
    out.into_iter()
        .map(|x| x.expect("not a permutation"))
        .collect()
}

/// Composite permutation: first `inner`, then `outer`.
pub fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&t| outer[t]).collect()
}

/// All (p,q)-shuffles as target-position lists: the first `p` symbols and the
/// last `q` symbols each keep their relative order.
pub fn shuffles(p: usize, q: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p + q);
    fn rec(p: usize, q: usize, i: usize, j: usize, cur: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if i == p && j == q {
            // cur[k] = true if slot k holds a symbol of the first block
            let mut target = vec![0; p + q];
            let (mut a, mut b) = (0, p);
            for (slot, &first) in cur.iter().enumerate() {
                if first {
                    target[a] = slot;
                    a += 1;
                } else {
                    target[b] = slot;
                    b += 1;
                }
            }
            out.push(target);
            return;
        }
        if i < p {
            cur.push(true);
            rec(p, q, i + 1, j, cur, out);
            cur.pop();
        }
        if j < q {
            cur.push(false);
            rec(p, q, i, j + 1, cur, out);
            cur.pop();
        }
    }
    rec(p, q, 0, 0, &mut cur, &mut out);
    out
}

/// Sign of applying `f_1 ⊗ … ⊗ f_n` to `x_1 ⊗ … ⊗ x_n`:
/// `(−1)^{Σ_{i<j} |f_j||x_i|}`.
pub fn tensor_map_parity(map_degrees: &[i32], elt_degrees: &[i32]) -> bool {
    assert_eq!(map_degrees.len(), elt_degrees.len());
    let mut odd = false;
    let mut prefix = 0i32;
    for (f, x) in map_degrees.iter().zip(elt_degrees) {
        if (f & prefix) & 1 != 0 {
            odd = !odd;
        }
        prefix += x;
    }
    odd
}

/// Sign relating `(s^{-1})^{⊗n}(x_1⊗…⊗x_n)` to `s^{-1}x_1⊗…⊗s^{-1}x_n`.
pub fn desuspend_all_parity(elt_degrees: &[i32]) -> bool {
    let ones = vec![-1; elt_degrees.len()];
    tensor_map_parity(&ones, elt_degrees)
}

/// Sign relating `s^{⊗n}(y_1⊗…⊗y_n)` to `sy_1⊗…⊗sy_n`.
pub fn suspend_all_parity(elt_degrees: &[i32]) -> bool {
    let ones = vec![1; elt_degrees.len()];
    tensor_map_parity(&ones, elt_degrees)
}

/// A graded symbol: a basis key together with its degree. Used where a
/// computation needs explicit suspension bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shifted<B> {
    pub inner: B,
    /// number of suspensions applied (negative for desuspensions)
    pub shift: i32,
}

/// Suspension `s` on a homogeneous element of degree `deg`: returns the new degree.
/// Applying `s` to a single symbol introduces no sign.
pub fn suspend<B: Key, K: Field>(x: &Lin<Shifted<B>, K>) -> Lin<Shifted<B>, K> {
    x.relabel(|b| Shifted {
        inner: b.inner.clone(),
        shift: b.shift + 1,
    })
}

pub fn desuspend<B: Key, K: Field>(x: &Lin<Shifted<B>, K>) -> Lin<Shifted<B>, K> {
    x.relabel(|b| Shifted {
        inner: b.inner.clone(),
        shift: b.shift - 1,
    })
}

/// Differential of a desuspended complex: `d(s⁻¹b) = −s⁻¹ db`.
pub fn desuspended_differential<B: Key, K: Field>(
    x: &Lin<Shifted<B>, K>,
    d: impl Fn(&B) -> Lin<B, K>,
) -> Lin<Shifted<B>, K> {
    let mut out = Lin::zero();
    for (b, c) in x.iter() {
        let db = d(&b.inner).relabel(|y| Shifted {
            inner: y.clone(),
            shift: b.shift,
        });
        // each desuspension contributes one sign
        out.add_scaled(&db, &(c.clone() * K::sign(b.shift.rem_euclid(2) == 1)));
    }
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    #[test]
    fn transposition_of_odd_symbols() {
        assert!(koszul_parity(&[1, 0], &[1, 1]));
        assert!(!koszul_parity(&[1, 0], &[2, 1]));
    }

    #[test]
    fn three_cycle() {
        // a⊗b⊗c ↦ c⊗a⊗b
        assert!(koszul_parity(&[1, 2, 0], &[2, 1, 1]));
    }

    #[test]
    fn shuffle_counts() {
        assert_eq!(shuffles(1, 1).len(), 2);
        assert_eq!(shuffles(2, 1).len(), 3);
        assert_eq!(shuffles(0, 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn lin_cancels() {
        let mut l: Lin<u8, Q> = Lin::basis(1);
        l.add_term(1, Q::from_i64(-1));
        assert!(l.is_zero());
    }

    #[test]
    fn suspension_roundtrip() {
        let x: Lin<Shifted<u8>, Q> = Lin::basis(Shifted { inner: 3, shift: 0 });
        assert_eq!(suspend(&desuspend(&x)), x);
    }
}
