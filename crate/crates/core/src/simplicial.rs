//! Finite simplicial sets with symbolic degeneracies.
//!
//! A general simplex is stored as `X(σ)(x)`: a nondegenerate simplex `x` of
//! dimension `m` and an order-preserving surjection `σ: [n] ↠ [m]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplexId {
    pub dim: u32,
    pub idx: u32,
}

/// `X(σ)(base)`; nondegenerate iff `sigma` is the identity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenSimplex {
    pub sigma: Vec<u32>,
    pub base: SimplexId,
}

impl GenSimplex {
    pub fn nondegenerate(base: SimplexId) -> GenSimplex {
        GenSimplex {
            sigma: (0..=base.dim).collect(),
            base,
        }
    }
    pub fn dim(&self) -> u32 {
        self.sigma.len() as u32 - 1
    }
    pub fn is_nondegenerate(&self) -> bool {
        self.sigma.len() as u32 == self.base.dim + 1
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("simplex `{0}` is defined twice")]
    Duplicate(String),
    #[error("simplex `{simplex}`: unknown face reference `{face}`")]
    UnknownFace { simplex: String, face: String },
    #[error("simplex `{simplex}` of dimension {dim} lists {got} faces")]
    FaceCount {
        simplex: String,
        dim: u32,
        got: usize,
    },
    #[error("simplex `{simplex}`: face {i} has dimension {got}, expected {expected}")]
    FaceDimension {
        simplex: String,
        i: usize,
        got: u32,
        expected: u32,
    },
    #[error("simplex `{simplex}`: simplicial identity d_{i} d_{j} = d_{jm1} d_{i} fails", jm1 = .j - 1)]
    Identity { simplex: String, i: usize, j: usize },
    #[error("bad degeneracy expression `{0}`")]
    BadDegeneracy(String),
    #[error("unknown basepoint `{0}`")]
    Basepoint(String),
    #[error("no vertices")]
    Empty,
    #[error("no simplex named `{0}` in the target")]
    MissingImage(String),
    #[error("the map does not commute with d_{i} on `{simplex}`")]
    FaceMismatch { simplex: String, i: usize },
}

#[derive(Clone)]
pub struct SimplicialSet {
    pub name: String,
    names: Vec<Vec<String>>,
    /// `faces[n][k][i]` = d_i of the k-th nondegenerate n-simplex (n ≥ 1)
    faces: Vec<Vec<Vec<GenSimplex>>>,
    lookup: HashMap<String, SimplexId>,
    pub basepoint: SimplexId,
}

impl fmt::Debug for SimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SimplicialSet({}, counts {:?})",
            self.name,
            self.counts()
        )
    }
}

/// Input description of a single nondegenerate simplex.
#[derive(Clone, Debug, Deserialize)]
pub struct SimplexData {
    pub name: String,
    pub dim: u32,
    #[serde(default)]
    pub faces: Vec<String>,
}

/// Input description of a finite simplicial set.
#[derive(Clone, Debug, Deserialize)]
pub struct SimplicialSetData {
    pub name: String,
    #[serde(default)]
    pub basepoint: Option<String>,
    pub simplices: Vec<SimplexData>,
}

impl SimplicialSet {
    /// Builds and validates a simplicial set from named simplices. Face entries
    /// are simplex names, optionally preceded by degeneracies, e.g. `"s1 s0 v"`.
    pub fn from_data(data: &SimplicialSetData) -> Result<SimplicialSet, SimplicialError> {
        let mut names: Vec<Vec<String>> = Vec::new();
        let mut lookup = HashMap::new();
        let mut order: Vec<&SimplexData> = data.simplices.iter().collect();
        order.sort_by_key(|s| s.dim);
        for s in &order {
            while names.len() <= s.dim as usize {
                names.push(vec![]);
            }
            let id = SimplexId {
                dim: s.dim,
                idx: names[s.dim as usize].len() as u32,
            };
            if lookup.insert(s.name.clone(), id).is_some() {
                return Err(SimplicialError::Duplicate(s.name.clone()));
            }
            names[s.dim as usize].push(s.name.clone());
        }
        if names.is_empty() || names[0].is_empty() {
            return Err(SimplicialError::Empty);
        }
        let mut faces: Vec<Vec<Vec<GenSimplex>>> =
            names.iter().map(|v| vec![vec![]; v.len()]).collect();
        for s in &order {
            if s.dim == 0 {
                if !s.faces.is_empty() {
                    return Err(SimplicialError::FaceCount {
                        simplex: s.name.clone(),
                        dim: 0,
                        got: s.faces.len(),
                    });
                }
                continue;
            }
            if s.faces.len() != s.dim as usize + 1 {
                return Err(SimplicialError::FaceCount {
                    simplex: s.name.clone(),
                    dim: s.dim,
                    got: s.faces.len(),
                });
            }
            let id = lookup[&s.name];
            let mut fs = Vec::new();
            for (i, f) in s.faces.iter().enumerate() {
                let g = parse_face(f, &lookup).map_err(|e| match e {
                    SimplicialError::UnknownFace { face, .. } => SimplicialError::UnknownFace {
                        simplex: s.name.clone(),
                        face,
                    },
                    e => e,
                })?;
                if g.dim() != s.dim - 1 {
                    return Err(SimplicialError::FaceDimension {
                        simplex: s.name.clone(),
                        i,
                        got: g.dim(),
                        expected: s.dim - 1,
                    });
                }
                fs.push(g);
            }
            faces[id.dim as usize][id.idx as usize] = fs;
        }
        let basepoint = match &data.basepoint {
            Some(b) => *lookup
                .get(b)
                .filter(|id| id.dim == 0)
                .ok_or_else(|| SimplicialError::Basepoint(b.clone()))?,
            None => SimplexId { dim: 0, idx: 0 },
        };
        let x = SimplicialSet {
            name: data.name.clone(),
            names,
            faces,
            lookup,
            basepoint,
        };
        x.validate()?;
        Ok(x)
    }

    fn validate(&self) -> Result<(), SimplicialError> {
        for n in 2..self.names.len() {
            for k in 0..self.names[n].len() {
                let x = GenSimplex::nondegenerate(SimplexId {
                    dim: n as u32,
                    idx: k as u32,
                });
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = self.face(&self.face(&x, j), i);
                        let rhs = self.face(&self.face(&x, i), j - 1);
                        if lhs != rhs {
                            return Err(SimplicialError::Identity {
                                simplex: self.names[n][k].clone(),
                                i,
                                j,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> u32 {
        self.names.len() as u32 - 1
    }

    /// Number of nondegenerate simplices per dimension.
    pub fn counts(&self) -> Vec<usize> {
        self.names.iter().map(|v| v.len()).collect()
    }

    pub fn simplices(&self, n: u32) -> impl Iterator<Item = SimplexId> + '_ {
        let c = self.names.get(n as usize).map_or(0, |v| v.len());
        (0..c as u32).map(move |idx| SimplexId { dim: n, idx })
    }

    pub fn name(&self, id: SimplexId) -> &str {
        &self.names[id.dim as usize][id.idx as usize]
    }

    pub fn id(&self, name: &str) -> Option<SimplexId> {
        self.lookup.get(name).copied()
    }

    /// `d_i` of a nondegenerate simplex, from the face table.
    pub fn face_nd(&self, x: SimplexId, i: usize) -> &GenSimplex {
        &self.faces[x.dim as usize][x.idx as usize][i]
    }

    /// `X(θ)(s)` for an order-preserving `θ: [k] → [dim s]`.
    pub fn apply(&self, theta: &[u32], s: &GenSimplex) -> GenSimplex {
        let comp: Vec<u32> = theta.iter().map(|&t| s.sigma[t as usize]).collect();
        let m = s.base.dim;
        // the largest vertex of the base missed by the composite, if any
        let mut hit = vec![false; m as usize + 1];
        for &c in &comp {
            hit[c as usize] = true;
        }
        match (0..=m).rev().find(|&v| !hit[v as usize]) {
            None => GenSimplex {
                sigma: comp,
                base: s.base,
            },
            Some(i) => {
                let lowered: Vec<u32> = comp
                    .iter()
                    .map(|&c| if c > i { c - 1 } else { c })
                    .collect();
                let f = self.face_nd(s.base, i as usize).clone();
                self.apply(&lowered, &f)
            }
        }
    }

    /// `d_i s`.
    pub fn face(&self, s: &GenSimplex, i: usize) -> GenSimplex {
        let n = s.dim();
        let theta: Vec<u32> = (0..=n).filter(|&v| v as usize != i).collect();
        self.apply(&theta, s)
    }

    /// Restriction of a nondegenerate simplex to an increasing vertex list.
    pub fn restrict(&self, x: SimplexId, vertices: &[u32]) -> GenSimplex {
        self.apply(vertices, &GenSimplex::nondegenerate(x))
    }

    pub fn data(&self) -> SimplicialSetData {
        let mut simplices = Vec::new();
        for (n, v) in self.names.iter().enumerate() {
            for (k, name) in v.iter().enumerate() {
                let faces = if n == 0 {
                    vec![]
                } else {
                    self.faces[n][k].iter().map(|g| self.show_gen(g)).collect()
                };
                simplices.push(SimplexData {
                    name: name.clone(),
                    dim: n as u32,
                    faces,
                });
            }
        }
        SimplicialSetData {
            name: self.name.clone(),
            basepoint: Some(self.name(self.basepoint).into()),
            simplices,
        }
    }

    /// `"s_{j_1} … s_{j_k} name"` in canonical form (`j_1 > … > j_k`).
    pub fn show_gen(&self, g: &GenSimplex) -> String {
        let mut parts = Vec::new();
        // the surjection σ is s_{j_1}…s_{j_k} with j ranging over repeated positions
        for j in (0..g.sigma.len() - 1).rev() {
            if g.sigma[j] == g.sigma[j + 1] {
                parts.push(format!("s{j}"));
            }
        }
        parts.push(self.name(g.base).to_string());
        parts.join(" ")
    }

    /// The standard simplex `Δ^n`.
    pub fn simplex(n: u32) -> SimplicialSet {
        Self::from_subsets(&format!("Delta{n}"), n, n)
    }

    /// The boundary `∂Δ^n`.
    pub fn boundary(n: u32) -> SimplicialSet {
        assert!(n >= 1);
        Self::from_subsets(&format!("dDelta{n}"), n, n - 1)
    }

    /// Ordered simplicial complex of all nonempty subsets of `{0..n}` up to dimension `top`.
    fn from_subsets(name: &str, n: u32, top: u32) -> SimplicialSet {
        let mut simplices = Vec::new();
        for mask in 1u32..(1 << (n + 1)) {
            let verts: Vec<u32> = (0..=n).filter(|v| mask >> v & 1 == 1).collect();
            let dim = verts.len() as u32 - 1;
            if dim > top {
                continue;
            }
            let label = |vs: &[u32]| vs.iter().map(|v| v.to_string()).collect::<String>();
            let faces = if dim == 0 {
                vec![]
            } else {
                (0..verts.len())
                    .map(|i| {
                        let mut f = verts.clone();
                        f.remove(i);
                        label(&f)
                    })
                    .collect()
            };
            simplices.push(SimplexData {
                name: label(&verts),
                dim,
                faces,
            });
        }
        simplices.sort_by(|a, b| (a.dim, &a.name).cmp(&(b.dim, &b.name)));
        let data = SimplicialSetData {
            name: name.into(),
            basepoint: Some("0".into()),
            simplices,
        };
        Self::from_data(&data).expect("subset complexes are valid")
    }

    /// Minimal circle: one vertex `v`, one edge `e` with both faces `v`.
    pub fn circle() -> SimplicialSet {
        let data = SimplicialSetData {
            name: "S1".into(),
            basepoint: Some("v".into()),
            simplices: vec![
                SimplexData {
                    name: "v".into(),
                    dim: 0,
                    faces: vec![],
                },
                SimplexData {
                    name: "e".into(),
                    dim: 1,
                    faces: vec!["v".into(), "v".into()],
                },
            ],
        };
        Self::from_data(&data).expect("circle is valid")
    }

    /// Simplicial sphere `Δ^n/∂Δ^n` with one vertex and one nondegenerate `n`-simplex.
    pub fn sphere(n: u32) -> SimplicialSet {
        assert!(n >= 1);
        let degenerate_point = |d: u32| -> String {
            let mut parts: Vec<String> = (0..d).rev().map(|j| format!("s{j}")).collect();
            parts.push("v".into());
            parts.join(" ")
        };
        let data = SimplicialSetData {
            name: format!("S{n}"),
            basepoint: Some("v".into()),
            simplices: vec![
                SimplexData {
                    name: "v".into(),
                    dim: 0,
                    faces: vec![],
                },
                SimplexData {
                    name: "c".into(),
                    dim: n,
                    faces: vec![degenerate_point(n - 1); n as usize + 1],
                },
            ],
        };
        Self::from_data(&data).expect("sphere is valid")
    }

    /// Quotient by a spanning tree of the 1-skeleton, leaving a single vertex.
    ///
    /// Returns `None` when the 1-skeleton is disconnected.
    pub fn collapse_tree(&self) -> Option<SimplicialSet> {
        let nv = self.names[0].len();
        if nv == 1 {
            return Some(self.clone());
        }
        // union-find over vertices; an edge joins the components of its two faces
        let mut parent: Vec<usize> = (0..nv).collect();
        fn root(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        let mut tree = Vec::new();
        for e in self.simplices(1) {
            let (a, b) = (
                self.face_nd(e, 1).base.idx as usize,
                self.face_nd(e, 0).base.idx as usize,
            );
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                tree.push(e);
            }
        }
        if tree.len() + 1 != nv {
            return None;
        }
        let bp = self.name(self.basepoint).to_string();
        let in_tree = |s: SimplexId| s.dim == 0 || (s.dim == 1 && tree.contains(&s));
        let mut simplices = vec![SimplexData {
            name: bp.clone(),
            dim: 0,
            faces: vec![],
        }];
        for n in 1..=self.dim() {
            for s in self.simplices(n) {
                if in_tree(s) {
                    continue;
                }
                let faces = (0..=n as usize)
                    .map(|i| {
                        let g = self.face_nd(s, i);
                        if in_tree(g.base) {
                            let mut parts: Vec<String> =
                                (0..n - 1).rev().map(|j| format!("s{j}")).collect();
                            parts.push(bp.clone());
                            parts.join(" ")
                        } else {
                            self.show_gen(g)
                        }
                    })
                    .collect();
                simplices.push(SimplexData {
                    name: self.name(s).into(),
                    dim: n,
                    faces,
                });
            }
        }
        let data = SimplicialSetData {
            name: format!("{}/T", self.name),
            basepoint: Some(bp),
            simplices,
        };
        Some(Self::from_data(&data).expect("quotients of valid simplicial sets are valid"))
    }

    /// Product `X × Y`; nondegenerate simplices are pairs without a common degeneracy.
    pub fn product(x: &SimplicialSet, y: &SimplicialSet) -> SimplicialSet {
        type Key = (SimplexId, Vec<u32>, SimplexId, Vec<u32>);
        let mut table: BTreeMap<u32, Vec<Key>> = BTreeMap::new();
        let top = x.dim() + y.dim();
        for p in 0..=x.dim() {
            for q in 0..=y.dim() {
                for a in x.simplices(p) {
                    for b in y.simplices(q) {
                        for n in p.max(q)..=p + q {
                            for (sa, sb) in joint_surjections(n, p, q) {
                                table.entry(n).or_default().push((a, sa, b, sb));
                            }
                        }
                    }
                }
            }
        }
        let _ = top;
        let name_of = |k: &Key| -> String {
            let ga = GenSimplex {
                sigma: k.1.clone(),
                base: k.0,
            };
            let gb = GenSimplex {
                sigma: k.3.clone(),
                base: k.2,
            };
            format!(
                "({},{})",
                x.show_gen(&ga).replace(' ', "."),
                y.show_gen(&gb).replace(' ', ".")
            )
        };
        let mut simplices = Vec::new();
        for (n, keys) in &table {
            for k in keys {
                let faces = if *n == 0 {
                    vec![]
                } else {
                    let ga = GenSimplex {
                        sigma: k.1.clone(),
                        base: k.0,
                    };
                    let gb = GenSimplex {
                        sigma: k.3.clone(),
                        base: k.2,
                    };
                    (0..=*n as usize)
                        .map(|i| {
                            let (fa, fb) = (x.face(&ga, i), y.face(&gb, i));
                            // split off the common degeneracies
                            let len = fa.sigma.len();
                            let keep: Vec<usize> = (0..len)
                                .filter(|&j| {
                                    j + 1 == len
                                        || fa.sigma[j] != fa.sigma[j + 1]
                                        || fb.sigma[j] != fb.sigma[j + 1]
                                })
                                .collect();
                            let core: Key = (
                                fa.base,
                                keep.iter().map(|&j| fa.sigma[j]).collect(),
                                fb.base,
                                keep.iter().map(|&j| fb.sigma[j]).collect(),
                            );
                            let mut degs = Vec::new();
                            let mut pos = 0u32;
                            // σ: [len-1] ↠ [keep.len()-1], collapsing j onto the next kept index
                            let mut sigma = Vec::new();
                            for j in 0..len {
                                sigma.push(pos);
                                if keep.contains(&j) {
                                    pos += 1;
                                }
                            }
                            for j in (0..len - 1).rev() {
                                if sigma[j] == sigma[j + 1] {
                                    degs.push(format!("s{j}"));
                                }
                            }
                            degs.push(name_of(&core));
                            degs.join(" ")
                        })
                        .collect()
                };
                simplices.push(SimplexData {
                    name: name_of(k),
                    dim: *n,
                    faces,
                });
            }
        }
        let bp = name_of(&(x.basepoint, vec![0], y.basepoint, vec![0]));
        let data = SimplicialSetData {
            name: format!("{}x{}", x.name, y.name),
            basepoint: Some(bp),
            simplices,
        };
        Self::from_data(&data).expect("products of valid simplicial sets are valid")
    }
}

/// Pairs of surjections `[n] ↠ [p]`, `[n] ↠ [q]` that are jointly injective.
fn joint_surjections(n: u32, p: u32, q: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
    // lattice paths from (0,0) to (p,q) with n steps, each step advancing a, b or both
    let mut out = Vec::new();
    fn rec(
        n: u32,
        p: u32,
        q: u32,
        a: &mut Vec<u32>,
        b: &mut Vec<u32>,
        out: &mut Vec<(Vec<u32>, Vec<u32>)>,
    ) {
        let (la, lb) = (*a.last().unwrap(), *b.last().unwrap());
        if a.len() as u32 == n + 1 {
            if la == p && lb == q {
                out.push((a.clone(), b.clone()));
            }
            return;
        }
        for (da, db) in [(1, 0), (0, 1), (1, 1)] {
            if la + da <= p && lb + db <= q {
                a.push(la + da);
                b.push(lb + db);
                rec(n, p, q, a, b, out);
                a.pop();
                b.pop();
            }
        }
    }
    rec(n, p, q, &mut vec![0], &mut vec![0], &mut out);
    out
}

fn parse_face(s: &str, lookup: &HashMap<String, SimplexId>) -> Result<GenSimplex, SimplicialError> {
    let toks: Vec<&str> = s.split_whitespace().collect();
    let (last, degs) = toks
        .split_last()
        .ok_or_else(|| SimplicialError::BadDegeneracy(s.into()))?;
    let base = *lookup
        .get(*last)
        .ok_or_else(|| SimplicialError::UnknownFace {
            simplex: String::new(),
            face: last.to_string(),
        })?;
    let mut g = GenSimplex::nondegenerate(base);
    // apply the degeneracies right to left
    for t in degs.iter().rev() {
        let j: u32 = t
            .strip_prefix('s')
            .and_then(|j| j.parse().ok())
            .ok_or_else(|| SimplicialError::BadDegeneracy(s.into()))?;
        let n = g.dim();
        if j > n {
            return Err(SimplicialError::BadDegeneracy(s.into()));
        }
        // s_j: [n+1] → [n], k ↦ k for k ≤ j, k−1 otherwise
        let theta: Vec<u32> = (0..=n + 1)
            .map(|k| if k <= j { k } else { k - 1 })
            .collect();
        g = GenSimplex {
            sigma: theta.iter().map(|&t| g.sigma[t as usize]).collect(),
            base: g.base,
        };
    }
    Ok(g)
}

/// A simplicial map, given on nondegenerate simplices.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    images: Vec<Vec<GenSimplex>>,
}

impl SimplicialMap {
    /// Sends every nondegenerate simplex of `source` to the simplex of `target` with the
    /// same name, checking compatibility with all faces.
    pub fn by_name(
        source: &SimplicialSet,
        target: &SimplicialSet,
    ) -> Result<SimplicialMap, SimplicialError> {
        let mut images = Vec::new();
        for n in 0..=source.dim() {
            let mut row = Vec::new();
            for s in source.simplices(n) {
                let name = source.name(s);
                let t = target
                    .id(name)
                    .ok_or_else(|| SimplicialError::MissingImage(name.to_string()))?;
                row.push(GenSimplex::nondegenerate(t));
            }
            images.push(row);
        }
        let map = SimplicialMap { images };
        for n in 1..=source.dim() {
            for s in source.simplices(n) {
                for i in 0..=n as usize {
                    let lhs = target.face(map.image(s), i);
                    let rhs = map.image_gen(target, source.face_nd(s, i));
                    if lhs != rhs {
                        return Err(SimplicialError::FaceMismatch {
                            simplex: source.name(s).to_string(),
                            i,
                        });
                    }
                }
            }
        }
        Ok(map)
    }

    pub fn image(&self, s: SimplexId) -> &GenSimplex {
        &self.images[s.dim as usize][s.idx as usize]
    }

    /// Image of `X(σ)(base)`.
    pub fn image_gen(&self, target: &SimplicialSet, g: &GenSimplex) -> GenSimplex {
        target.apply(&g.sigma, self.image(g.base))
    }
}
