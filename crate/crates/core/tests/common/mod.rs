//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls the library's enumeration, elimination, or search code;
//! images are read only through their point lists and the pairwise
//! adjacency predicate.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use dighom::{adjacent, Adjacency, DigitalImage, IntegerMatrix, LatticePoint};

/// Pairwise adjacency straight from coordinates (or the explicit edge list).
pub fn adj(x: &DigitalImage, i: usize, j: usize) -> bool {
    match x.adjacency() {
        Adjacency::Lattice(spec) => adjacent(x.point(i), x.point(j), spec).unwrap(),
        Adjacency::Explicit { .. } => x.edges().any(|(a, b)| (a, b) == (i, j) || (a, b) == (j, i)),
    }
}

pub fn eq_or_adj(x: &DigitalImage, i: usize, j: usize) -> bool {
    i == j || adj(x, i, j)
}

pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

/// Number of components by union-find over all pairs.
pub fn component_count(x: &DigitalImage) -> usize {
    let mut uf = UnionFind::new(x.len());
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            if adj(x, i, j) {
                uf.union(i, j);
            }
        }
    }
    uf.count()
}

/// All `(n+1)`-tuples of point indices, filtered by the pairwise condition, in lex order.
pub fn brute_simplexes(x: &DigitalImage, n: usize) -> Vec<Vec<usize>> {
    let len = x.len();
    if len == 0 {
        return Vec::new();
    }
    let total = len.pow(n as u32 + 1);
    let mut out = Vec::new();
    for code in 0..total {
        let mut t = vec![0; n + 1];
        let mut c = code;
        for k in (0..=n).rev() {
            t[k] = c % len;
            c /= len;
        }
        let ok = (0..=n).all(|a| (a + 1..=n).all(|b| eq_or_adj(x, t[a], t[b])));
        if ok {
            out.push(t);
        }
    }
    out
}

/// Rank over the rationals by column reduction on sparse exact fractions: each column is
/// reduced against earlier pivots keyed by their lowest nonzero row.
pub fn rational_rank(m: &IntegerMatrix) -> usize {
    let mut pivots: HashMap<usize, BTreeMap<usize, BigRational>> = HashMap::new();
    for column in m.columns() {
        let mut c: BTreeMap<usize, BigRational> =
            column.iter().map(|(i, x)| (*i, BigRational::from_integer(x.clone()))).collect();
        while let Some((&low, value)) = c.iter().next_back() {
            let Some(p) = pivots.get(&low) else { break };
            let factor = value / &p[&low];
            for (i, x) in p {
                let entry = c.entry(*i).or_insert_with(BigRational::zero);
                *entry -= &factor * x;
                if entry.is_zero() {
                    c.remove(i);
                }
            }
        }
        if let Some((&low, _)) = c.iter().next_back() {
            pivots.insert(low, c);
        }
    }
    pivots.len()
}

/// Dimension of the rational kernel, `cols - rank`.
pub fn rational_nullity(m: &IntegerMatrix) -> usize {
    m.cols() - rational_rank(m)
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Rank over `Z/p` for a small prime `p`, by the same column reduction.
pub fn rank_mod_p(m: &IntegerMatrix, p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut pivots: HashMap<usize, BTreeMap<usize, u64>> = HashMap::new();
    for column in m.columns() {
        let mut c: BTreeMap<usize, u64> = column
            .iter()
            .map(|(i, x)| (*i, (((x % &pb) + &pb) % &pb).to_u64().unwrap()))
            .filter(|(_, v)| *v != 0)
            .collect();
        while let Some((&low, &value)) = c.iter().next_back() {
            let Some(piv) = pivots.get(&low) else { break };
            let factor = value * pow_mod(piv[&low], p - 2, p) % p;
            for (i, x) in piv {
                let entry = c.entry(*i).or_insert(0);
                *entry = (*entry + p - factor * x % p) % p;
                if *entry == 0 {
                    c.remove(i);
                }
            }
        }
        if let Some((&low, _)) = c.iter().next_back() {
            pivots.insert(low, c);
        }
    }
    pivots.len()
}

/// Betti number of a chain complex from rational ranks: `nullity d_n - rank d_(n+1)`.
pub fn oracle_betti(d_n: &IntegerMatrix, d_next: &IntegerMatrix) -> usize {
    rational_nullity(d_n) - rational_rank(d_next)
}

/// Number of torsion summands of order divisible by `p`: `rank_Q - rank_p` of `d_(n+1)`.
pub fn p_torsion_count(d_next: &IntegerMatrix, p: u64) -> usize {
    rational_rank(d_next) - rank_mod_p(d_next, p)
}

/// Boundary matrix built from an explicit list of tuples (oracle side).
pub fn oracle_boundary(faces: &[Vec<usize>], cells: &[Vec<usize>]) -> IntegerMatrix {
    let index: HashMap<&Vec<usize>, usize> = faces.iter().enumerate().map(|(k, f)| (f, k)).collect();
    let columns = cells
        .iter()
        .map(|cell| {
            (0..cell.len())
                .map(|i| {
                    let mut f = cell.clone();
                    f.remove(i);
                    let r = *index.get(&f).expect("face present");
                    (r, BigInt::from(if i % 2 == 0 { 1 } else { -1 }))
                })
                .collect()
        })
        .collect();
    IntegerMatrix::from_columns(faces.len(), columns).unwrap()
}

/// Betti numbers `0..=top` of the singular complex, computed from brute-force simplex
/// lists and rational ranks.
pub fn singular_bettis(x: &DigitalImage, top: usize) -> Vec<usize> {
    let cells: Vec<Vec<Vec<usize>>> = (0..=top + 1).map(|n| brute_simplexes(x, n)).collect();
    (0..=top)
        .map(|n| {
            let d_n = if n == 0 {
                IntegerMatrix::zero(0, cells[0].len())
            } else {
                oracle_boundary(&cells[n - 1], &cells[n])
            };
            let d_next = oracle_boundary(&cells[n], &cells[n + 1]);
            oracle_betti(&d_n, &d_next)
        })
        .collect()
}

/// Cliques of the adjacency graph with `size` vertices, as increasing vertex lists.
pub fn cliques(x: &DigitalImage, size: usize) -> Vec<Vec<usize>> {
    fn grow(x: &DigitalImage, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().map_or(0, |&v| v + 1);
        for v in start..x.len() {
            if cur.iter().all(|&w| adj(x, w, v)) {
                cur.push(v);
                grow(x, size, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(x, size, &mut Vec::new(), &mut out);
    out
}

/// Betti numbers `0..=top` of the flag complex of the adjacency graph. Singular
/// homology of ordered tuples agrees with this simplicial homology.
pub fn flag_bettis(x: &DigitalImage, top: usize) -> Vec<usize> {
    let cells: Vec<Vec<Vec<usize>>> = (0..=top + 1).map(|n| cliques(x, n + 1)).collect();
    (0..=top)
        .map(|n| {
            let d_n = if n == 0 {
                IntegerMatrix::zero(0, cells[0].len())
            } else {
                oracle_boundary(&cells[n - 1], &cells[n])
            };
            let d_next = oracle_boundary(&cells[n], &cells[n + 1]);
            oracle_betti(&d_n, &d_next)
        })
        .collect()
}

/// All continuous maps `X -> Y` as tables, by filtering all `|Y|^|X|` tables.
pub fn brute_continuous_tables(x: &DigitalImage, y: &DigitalImage) -> Vec<Vec<usize>> {
    let (nx, ny) = (x.len(), y.len());
    let mut out = Vec::new();
    if ny == 0 {
        if nx == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let total = ny.pow(nx as u32);
    let pairs: Vec<(usize, usize)> = (0..nx)
        .flat_map(|a| (a + 1..nx).map(move |b| (a, b)))
        .filter(|&(a, b)| adj(x, a, b))
        .collect();
    for code in 0..total {
        let mut t = vec![0; nx];
        let mut c = code;
        for k in (0..nx).rev() {
            t[k] = c % ny;
            c /= ny;
        }
        if pairs.iter().all(|&(a, b)| eq_or_adj(y, t[a], t[b])) {
            out.push(t);
        }
    }
    out
}

/// The explicit map graph: vertices are tables, edges join pointwise equal-or-adjacent
/// tables. `pins` restricts to tables with `t[x] = y` for each pin.
pub struct MapGraph {
    pub tables: Vec<Vec<usize>>,
    pub adjacency: Vec<Vec<usize>>,
}

impl MapGraph {
    pub fn new(x: &DigitalImage, y: &DigitalImage, pins: &[(usize, usize)]) -> Self {
        let tables: Vec<Vec<usize>> = brute_continuous_tables(x, y)
            .into_iter()
            .filter(|t| pins.iter().all(|&(a, b)| t[a] == b))
            .collect();
        let mut adjacency = vec![Vec::new(); tables.len()];
        for i in 0..tables.len() {
            for j in i + 1..tables.len() {
                if tables[i].iter().zip(&tables[j]).all(|(&a, &b)| eq_or_adj(y, a, b)) {
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
            }
        }
        MapGraph { tables, adjacency }
    }

    pub fn index(&self, t: &[usize]) -> Option<usize> {
        self.tables.iter().position(|s| s == t)
    }

    /// BFS distance between two tables, `None` if disconnected.
    pub fn distance(&self, a: usize, b: usize) -> Option<usize> {
        let mut dist = vec![usize::MAX; self.tables.len()];
        dist[a] = 0;
        let mut queue = VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            if v == b {
                return Some(dist[v]);
            }
            for &w in &self.adjacency[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    pub fn components(&self) -> UnionFind {
        let mut uf = UnionFind::new(self.tables.len());
        for (i, list) in self.adjacency.iter().enumerate() {
            for &j in list {
                uf.union(i, j);
            }
        }
        uf
    }
}

/// Convention for the pieces of `f` in a trivial-extension decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PieceRule {
    /// Pieces of `f` may be constant.
    AnyPieces,
    /// Every piece of `f` must be nonconstant.
    NonconstantPieces,
}

/// Decomposition search: cut `g` into pieces of positive length, select some
/// of them in order so their product is `f`, and require the rest to be constant.
pub fn brute_trivial_extension(f: &[usize], g: &[usize], rule: PieceRule) -> bool {
    let mg = g.len() - 1;
    if mg == 0 {
        return false;
    }
    for cuts in 0u32..(1 << (mg - 1)) {
        let mut bounds = vec![0];
        for k in 1..mg {
            if cuts & (1 << (k - 1)) != 0 {
                bounds.push(k);
            }
        }
        bounds.push(mg);
        let pieces: Vec<&[usize]> = bounds.windows(2).map(|w| &g[w[0]..=w[1]]).collect();
        let t = pieces.len();
        for sel in 1u32..(1 << t) {
            let mut product: Vec<usize> = Vec::new();
            let mut ok = true;
            for (i, piece) in pieces.iter().enumerate() {
                let constant = piece.iter().all(|&v| v == piece[0]);
                if sel & (1 << i) != 0 {
                    if rule == PieceRule::NonconstantPieces && constant {
                        ok = false;
                        break;
                    }
                    if product.is_empty() {
                        product.extend_from_slice(piece);
                    } else if product.last() == Some(&piece[0]) {
                        product.extend_from_slice(&piece[1..]);
                    } else {
                        ok = false;
                        break;
                    }
                } else if !constant {
                    ok = false;
                    break;
                }
            }
            if ok && product == f {
                return true;
            }
        }
    }
    false
}

/// All loops of parameter length `m` at `base`, as index sequences.
pub fn all_loops(x: &DigitalImage, base: usize, m: usize) -> Vec<Vec<usize>> {
    fn walk(x: &DigitalImage, m: usize, base: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            if *cur.last().unwrap() == base {
                out.push(cur.clone());
            }
            return;
        }
        let last = *cur.last().unwrap();
        for v in 0..x.len() {
            if eq_or_adj(x, last, v) {
                cur.push(v);
                walk(x, m, base, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(x, m, base, &mut vec![base], &mut out);
    out
}

/// Increasing index sets of size `k` from `0..n`.
pub fn subsets(n: usize, k: usize) -> Vec<BTreeSet<usize>> {
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        if mask.count_ones() as usize == k {
            out.push((0..n).filter(|i| mask & (1 << i) != 0).collect());
        }
    }
    out
}

pub fn one() -> BigInt {
    BigInt::one()
}

/// One explicit-edge image for each isomorphism class of graphs on `n` vertices.
/// Every digital image with `n` points has the adjacency graph of one of these.
pub fn graph_classes(n: usize) -> Vec<Arc<DigitalImage>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let slot: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let perms = permutations(n);
    let relabel: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            pairs
                .iter()
                .map(|&(a, b)| slot[&(p[a].min(p[b]), p[a].max(p[b]))])
                .collect()
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let canon = relabel
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(k, _)| mask & (1 << k) != 0)
                    .fold(0u32, |acc, (_, &t)| acc | (1 << t))
            })
            .min()
            .unwrap_or(0);
        if !seen.insert(canon) {
            continue;
        }
        let point = |i: usize| LatticePoint::from([i as i64]);
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &(a, b))| (point(a), point(b)));
        out.push(Arc::new(DigitalImage::with_edges(1, (0..n).map(point), edges).unwrap()));
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
