//! Abstract incidence structures: type signatures, duality, isomorphism,
//! resolvability, lattice generation closure and moduli-ideal export.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, Q};

/// Points `0..n_points` and blocks given as sorted point lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStructure {
    n_points: usize,
    blocks: Vec<Vec<usize>>,
    multi: bool,
}

impl IncidenceStructure {
    /// Repeated blocks are rejected.
    pub fn new(n_points: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        Self::build(n_points, blocks, false)
    }

    /// Allows repeated blocks.
    pub fn new_multi(n_points: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        Self::build(n_points, blocks, true)
    }

    fn build(n_points: usize, blocks: Vec<Vec<usize>>, multi: bool) -> Result<Self> {
        let mut out = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            b.sort_unstable();
            b.dedup();
            if b.last().is_some_and(|&p| p >= n_points) {
                return Err(Error::Invalid(format!("block refers to point {} of {n_points}", b.last().unwrap())));
            }
            out.push(b);
        }
        if !multi {
            let set: BTreeSet<&Vec<usize>> = out.iter().collect();
            if set.len() != out.len() {
                return Err(Error::Invalid("repeated block".into()));
            }
        }
        Ok(IncidenceStructure { n_points, blocks: out, multi })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn n_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn is_multi(&self) -> bool {
        self.multi
    }

    pub fn has_flag(&self, point: usize, block: usize) -> bool {
        self.blocks[block].binary_search(&point).is_ok()
    }

    /// Blocks through each point.
    pub fn point_blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_points];
        for (b, pts) in self.blocks.iter().enumerate() {
            for &p in pts {
                out[p].push(b);
            }
        }
        out
    }

    pub fn point_degrees(&self) -> Vec<usize> {
        self.point_blocks().iter().map(Vec::len).collect()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Restriction to a subset of blocks; points keep their indices.
    pub fn with_blocks(&self, keep: &[usize]) -> Result<Self> {
        Self::build(self.n_points, keep.iter().map(|&b| self.blocks[b].clone()).collect(), self.multi)
    }

    /// Restriction to the points covered by the given blocks, reindexed.
    /// Returns the structure and the original index of each new point.
    pub fn induced_on_blocks(&self, keep: &[usize]) -> Result<(Self, Vec<usize>)> {
        let covered: BTreeSet<usize> = keep.iter().flat_map(|&b| self.blocks[b].iter().copied()).collect();
        let order: Vec<usize> = covered.into_iter().collect();
        let pos: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let blocks = keep.iter().map(|&b| self.blocks[b].iter().map(|p| pos[p]).collect()).collect();
        Ok((Self::build(order.len(), blocks, self.multi)?, order))
    }

    pub fn to_json(&self) -> IncidenceJson {
        let flags = (0..self.n_points)
            .map(|p| (0..self.blocks.len()).map(|b| if self.has_flag(p, b) { '1' } else { '0' }).collect())
            .collect();
        IncidenceJson { n_points: self.n_points, n_blocks: self.blocks.len(), flags, multi: self.multi }
    }

    pub fn from_json(j: &IncidenceJson) -> Result<Self> {
        if j.flags.len() != j.n_points {
            return Err(Error::Invalid(format!("expected {} flag rows, found {}", j.n_points, j.flags.len())));
        }
        let mut blocks = vec![Vec::new(); j.n_blocks];
        for (p, row) in j.flags.iter().enumerate() {
            if row.len() != j.n_blocks {
                return Err(Error::Invalid(format!("flag row {p} has length {}", row.len())));
            }
            for (b, ch) in row.bytes().enumerate() {
                match ch {
                    b'1' => blocks[b].push(p),
                    b'0' => {}
                    _ => return Err(Error::Invalid(format!("bad flag character in row {p}"))),
                }
            }
        }
        Self::build(j.n_points, blocks, j.multi)
    }
}

/// Rows are points, one character per block.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IncidenceJson {
    pub n_points: usize,
    pub n_blocks: usize,
    pub flags: Vec<String>,
    #[serde(default)]
    pub multi: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeSignature {
    pub n_points: usize,
    pub n_blocks: usize,
    /// degree → number of points
    pub point_degrees: BTreeMap<usize, usize>,
    /// size → number of blocks
    pub block_sizes: BTreeMap<usize, usize>,
    pub balanced: bool,
}

impl TypeSignature {
    /// Constant point degree and block size, if both are constant.
    pub fn regular(&self) -> Option<(usize, usize)> {
        match (self.point_degrees.len(), self.block_sizes.len()) {
            (1, 1) => Some((*self.point_degrees.keys().next().unwrap(), *self.block_sizes.keys().next().unwrap())),
            _ => None,
        }
    }

    /// Whether the signature is `(p_r, b_k)`.
    pub fn is(&self, p: usize, r: usize, b: usize, k: usize) -> bool {
        self.n_points == p && self.n_blocks == b && self.regular() == Some((r, k))
    }
}

impl fmt::Display for TypeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.regular() {
            Some((r, _)) if self.balanced => write!(f, "({}_{})", self.n_points, r),
            Some((r, k)) => write!(f, "({}_{}, {}_{})", self.n_points, r, self.n_blocks, k),
            None => {
                let hist = |m: &BTreeMap<usize, usize>| m.iter().map(|(k, v)| format!("{v}×{k}")).collect::<Vec<_>>().join(" ");
                write!(f, "(points {}: {}; blocks {}: {})", self.n_points, hist(&self.point_degrees), self.n_blocks, hist(&self.block_sizes))
            }
        }
    }
}

fn histogram(v: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &x in v {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

pub fn census_type(s: &IncidenceStructure) -> TypeSignature {
    let point_degrees = histogram(&s.point_degrees());
    let block_sizes = histogram(&s.block_sizes());
    let balanced = s.n_points == s.n_blocks()
        && point_degrees.len() == 1
        && block_sizes.len() == 1
        && point_degrees.keys().next() == block_sizes.keys().next();
    TypeSignature { n_points: s.n_points, n_blocks: s.n_blocks(), point_degrees, block_sizes, balanced }
}

/// Transposed structure: blocks become points.
pub fn dual(s: &IncidenceStructure) -> IncidenceStructure {
    IncidenceStructure { n_points: s.n_blocks(), blocks: s.point_blocks(), multi: s.multi }
}

// ---------------------------------------------------------------------------
// Isomorphism by individualization and refinement.

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Isomorphism {
    /// Image in B of each point of A.
    pub points: Vec<usize>,
    /// Image in B of each block of A.
    pub blocks: Vec<usize>,
}

impl Isomorphism {
    pub fn verify(&self, a: &IncidenceStructure, b: &IncidenceStructure) -> bool {
        if a.n_points != b.n_points || a.n_blocks() != b.n_blocks() {
            return false;
        }
        let bij = |v: &[usize], n: usize| v.len() == n && v.iter().collect::<BTreeSet<_>>().len() == n && v.iter().all(|&x| x < n);
        if !bij(&self.points, a.n_points) || !bij(&self.blocks, a.n_blocks()) {
            return false;
        }
        a.blocks.iter().enumerate().all(|(i, pts)| {
            let mut img: Vec<usize> = pts.iter().map(|&p| self.points[p]).collect();
            img.sort_unstable();
            img == b.blocks[self.blocks[i]]
        })
    }

    pub fn inverse(&self) -> Isomorphism {
        let inv = |v: &[usize]| {
            let mut out = vec![0; v.len()];
            for (i, &j) in v.iter().enumerate() {
                out[j] = i;
            }
            out
        };
        Isomorphism { points: inv(&self.points), blocks: inv(&self.blocks) }
    }
}

/// Bipartite graph: nodes `0..p` are points, `p..p+b` blocks.
struct Graph {
    n_points: usize,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    fn of(s: &IncidenceStructure) -> Self {
        let p = s.n_points;
        let mut adj = vec![Vec::new(); p + s.n_blocks()];
        for (b, pts) in s.blocks.iter().enumerate() {
            for &q in pts {
                adj[q].push(p + b);
                adj[p + b].push(q);
            }
        }
        Graph { n_points: p, adj }
    }
}

/// Refines two colourings jointly, so equal colours mean equal signatures in
/// both graphs. Returns false if the colour histograms diverge.
fn refine(ga: &Graph, gb: &Graph, ca: &mut Vec<u32>, cb: &mut Vec<u32>) -> bool {
    loop {
        let classes_before = ca.iter().collect::<BTreeSet<_>>().len();
        let mut dict: BTreeMap<(u32, Vec<u32>), u32> = BTreeMap::new();
        let sig = |g: &Graph, c: &[u32], v: usize| {
            let mut nb: Vec<u32> = g.adj[v].iter().map(|&u| c[u]).collect();
            nb.sort_unstable();
            (c[v], nb)
        };
        let sa: Vec<_> = (0..ga.adj.len()).map(|v| sig(ga, ca, v)).collect();
        let sb: Vec<_> = (0..gb.adj.len()).map(|v| sig(gb, cb, v)).collect();
        for s in sa.iter().chain(sb.iter()) {
            let next = dict.len() as u32;
            dict.entry(s.clone()).or_insert(next);
        }
        *ca = sa.iter().map(|s| dict[s]).collect();
        *cb = sb.iter().map(|s| dict[s]).collect();
        if histogram_u32(ca) != histogram_u32(cb) {
            return false;
        }
        if ca.iter().collect::<BTreeSet<_>>().len() == classes_before {
            return true;
        }
    }
}

fn histogram_u32(c: &[u32]) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for &x in c {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

fn search(ga: &Graph, gb: &Graph, mut ca: Vec<u32>, mut cb: Vec<u32>, a: &IncidenceStructure, b: &IncidenceStructure) -> Option<Isomorphism> {
    if !refine(ga, gb, &mut ca, &mut cb) {
        return None;
    }
    let hist = histogram_u32(&ca);
    // Smallest non-singleton class, points before blocks.
    let pick = (0..ca.len())
        .filter(|&v| hist[&ca[v]] > 1)
        .min_by_key(|&v| (v >= ga.n_points, hist[&ca[v]], ca[v], v));
    let Some(v) = pick else {
        let pos: HashMap<u32, usize> = cb.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let p = ga.n_points;
        let map: Vec<usize> = ca.iter().map(|c| pos[c]).collect();
        let iso = Isomorphism { points: map[..p].to_vec(), blocks: map[p..].iter().map(|&x| x - p).collect() };
        return iso.verify(a, b).then_some(iso);
    };
    let fresh = ca.iter().chain(cb.iter()).max().copied().unwrap_or(0) + 1;
    for u in (0..cb.len()).filter(|&u| cb[u] == ca[v]) {
        let mut na = ca.clone();
        let mut nb = cb.clone();
        na[v] = fresh;
        nb[u] = fresh;
        if let Some(iso) = search(ga, gb, na, nb, a, b) {
            return Some(iso);
        }
    }
    None
}

/// A witness isomorphism, or `None` when none exists.
pub fn isomorphic(a: &IncidenceStructure, b: &IncidenceStructure) -> Option<Isomorphism> {
    if census_type(a) != census_type(b) {
        return None;
    }
    let ga = Graph::of(a);
    let gb = Graph::of(b);
    let init = |s: &IncidenceStructure| -> Vec<u32> {
        (0..s.n_points).map(|_| 0).chain((0..s.n_blocks()).map(|_| 1)).collect()
    };
    search(&ga, &gb, init(a), init(b), a, b)
}

// ---------------------------------------------------------------------------
// Resolvability.

/// Sets of blocks partitioning the point set, as sorted block lists.
pub fn parallel_classes(s: &IncidenceStructure) -> Vec<Vec<usize>> {
    let pb = s.point_blocks();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let mut covered = vec![false; s.n_points];
    fn rec(
        s: &IncidenceStructure,
        pb: &[Vec<usize>],
        covered: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some(p) = covered.iter().position(|c| !c) else {
            let mut c = chosen.clone();
            c.sort_unstable();
            out.push(c);
            return;
        };
        for &b in &pb[p] {
            if s.blocks[b].iter().any(|&q| covered[q]) {
                continue;
            }
            for &q in &s.blocks[b] {
                covered[q] = true;
            }
            chosen.push(b);
            rec(s, pb, covered, chosen, out);
            chosen.pop();
            for &q in &s.blocks[b] {
                covered[q] = false;
            }
        }
    }
    if s.n_points > 0 {
        rec(s, &pb, &mut covered, &mut chosen, &mut out);
    }
    out.sort();
    out
}

/// A partition of the blocks into `classes` parallel classes, if one exists.
pub fn resolvable(s: &IncidenceStructure, classes: usize) -> Option<Vec<Vec<usize>>> {
    if classes == 0 || s.n_blocks() % classes != 0 {
        return None;
    }
    let par = parallel_classes(s);
    let per = s.n_blocks() / classes;
    let par: Vec<Vec<usize>> = par.into_iter().filter(|c| c.len() == per).collect();
    let mut by_block: Vec<Vec<usize>> = vec![Vec::new(); s.n_blocks()];
    for (i, c) in par.iter().enumerate() {
        for &b in c {
            by_block[b].push(i);
        }
    }
    let mut used = vec![false; s.n_blocks()];
    let mut chosen = Vec::new();
    fn rec(par: &[Vec<usize>], by_block: &[Vec<usize>], used: &mut Vec<bool>, chosen: &mut Vec<usize>) -> bool {
        let Some(b) = used.iter().position(|u| !u) else { return true };
        for &ci in &by_block[b] {
            if par[ci].iter().any(|&x| used[x]) {
                continue;
            }
            for &x in &par[ci] {
                used[x] = true;
            }
            chosen.push(ci);
            if rec(par, by_block, used, chosen) {
                return true;
            }
            chosen.pop();
            for &x in &par[ci] {
                used[x] = false;
            }
        }
        false
    }
    rec(&par, &by_block, &mut used, &mut chosen).then(|| chosen.iter().map(|&i| par[i].clone()).collect())
}

// ---------------------------------------------------------------------------
// Intersection lattices and generation.

/// Rank-3 lattice of a line arrangement: lines, points and their flags.
#[derive(Clone, Debug)]
pub struct GeometricLattice {
    n_lines: usize,
    /// Lines through each lattice point, as a bit mask.
    point_lines: Vec<u64>,
    /// `meet[i][j]`: the lattice point on lines i and j.
    meet: Vec<Vec<usize>>,
}

impl GeometricLattice {
    /// Lattice from point-to-lines incidence. Every pair of lines must meet
    /// in exactly one listed point.
    pub fn new(n_lines: usize, points: &[Vec<usize>]) -> Result<Self> {
        if n_lines > 64 {
            return Err(Error::Invalid("lattices support at most 64 lines".into()));
        }
        let mut meet = vec![vec![usize::MAX; n_lines]; n_lines];
        let mut point_lines = Vec::with_capacity(points.len());
        for (k, ls) in points.iter().enumerate() {
            let mut mask = 0u64;
            for &i in ls {
                if i >= n_lines {
                    return Err(Error::Invalid(format!("line index {i} out of range")));
                }
                mask |= 1 << i;
            }
            for &i in ls {
                for &j in ls {
                    if i != j {
                        if meet[i][j] != usize::MAX && meet[i][j] != k {
                            return Err(Error::Invalid(format!("lines {i} and {j} meet twice")));
                        }
                        meet[i][j] = k;
                    }
                }
            }
            point_lines.push(mask);
        }
        for (i, row) in meet.iter().enumerate() {
            if let Some(j) = row.iter().enumerate().position(|(j, &m)| j != i && m == usize::MAX) {
                return Err(Error::Invalid(format!("lines {i} and {j} have no common point")));
            }
        }
        Ok(GeometricLattice { n_lines, point_lines, meet })
    }

    pub fn from_arrangement(arr: &Arrangement) -> Result<Self> {
        let pts: Vec<Vec<usize>> = arr.census.iter().map(|c| c.curves.clone()).collect();
        Self::new(arr.lines.len(), &pts)
    }

    pub fn n_lines(&self) -> usize {
        self.n_lines
    }

    pub fn n_points(&self) -> usize {
        self.point_lines.len()
    }

    pub fn line_degree(&self, i: usize) -> usize {
        self.point_lines.iter().filter(|m| *m >> i & 1 == 1).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub lines: Vec<usize>,
    pub points: Vec<usize>,
    pub generates: bool,
}

fn closure_mask(l: &GeometricLattice, seed: u64) -> u64 {
    let mut lines = seed;
    let mut points: Vec<bool> = vec![false; l.n_points()];
    let mut point_list: Vec<usize> = Vec::new();
    loop {
        let mut grew = false;
        let ls: Vec<usize> = (0..l.n_lines).filter(|i| lines >> i & 1 == 1).collect();
        for (a, &i) in ls.iter().enumerate() {
            for &j in &ls[a + 1..] {
                let p = l.meet[i][j];
                if !points[p] {
                    points[p] = true;
                    point_list.push(p);
                }
            }
        }
        for a in 0..point_list.len() {
            for b in a + 1..point_list.len() {
                let common = l.point_lines[point_list[a]] & l.point_lines[point_list[b]];
                if common != 0 && lines & common != common {
                    lines |= common;
                    grew = true;
                }
            }
        }
        if !grew {
            return lines;
        }
    }
}

/// Closure of a set of lines under meets of lines and joins of points.
pub fn generation_closure(l: &GeometricLattice, seed: &[usize]) -> ClosureReport {
    let mask = seed.iter().fold(0u64, |m, &i| m | 1 << i);
    let lines_mask = closure_mask(l, mask);
    let lines: Vec<usize> = (0..l.n_lines).filter(|i| lines_mask >> i & 1 == 1).collect();
    let points: Vec<usize> = (0..l.n_points())
        .filter(|&p| {
            let on = l.point_lines[p] & lines_mask;
            on.count_ones() >= 2
        })
        .collect();
    let full = if l.n_lines == 64 { u64::MAX } else { (1u64 << l.n_lines) - 1 };
    ClosureReport { lines, points, generates: lines_mask == full }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationReport {
    pub g: usize,
    /// First generating subset in search order.
    pub witness: Vec<usize>,
    /// (subset size, subsets tested, subsets generating) for each size tried.
    pub tested: Vec<(usize, u64, u64)>,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else { return out };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Least number of lines generating the whole lattice. Every subset of each
/// size is tested, so the counts in the report are exhaustive.
pub fn generation_number(l: &GeometricLattice) -> GenerationReport {
    // Lines ordered by (degree sequence, index).
    let mut order: Vec<usize> = (0..l.n_lines).collect();
    order.sort_by_key(|&i| {
        let mut degs: Vec<u32> = l.point_lines.iter().filter(|m| *m >> i & 1 == 1).map(|m| m.count_ones()).collect();
        degs.sort_unstable();
        (std::cmp::Reverse(degs), i)
    });
    let mut tested = Vec::new();
    for k in 1..=l.n_lines {
        let subsets = combinations(l.n_lines, k);
        let generating: Vec<bool> = subsets
            .par_iter()
            .map(|s| {
                let mask = s.iter().fold(0u64, |m, &i| m | 1 << order[i]);
                let full = if l.n_lines == 64 { u64::MAX } else { (1u64 << l.n_lines) - 1 };
                closure_mask(l, mask) == full
            })
            .collect();
        let count = generating.iter().filter(|&&g| g).count() as u64;
        tested.push((k, subsets.len() as u64, count));
        if let Some(first) = generating.iter().position(|&g| g) {
            let mut witness: Vec<usize> = subsets[first].iter().map(|&i| order[i]).collect();
            witness.sort_unstable();
            return GenerationReport { g: k, witness, tested };
        }
    }
    GenerationReport { g: l.n_lines, witness: (0..l.n_lines).collect(), tested }
}

// ---------------------------------------------------------------------------
// Moduli ideal export.

/// Monomial in the matrix variables `x_i_j` (row i, column j).
type Mono = Vec<(usize, usize)>;

fn entry(pins: &HashMap<(usize, usize), Q>, i: usize, j: usize) -> BTreeMap<Mono, Q> {
    match pins.get(&(i, j)) {
        Some(v) if v.is_zero() => BTreeMap::new(),
        Some(v) => BTreeMap::from([(Vec::new(), v.clone())]),
        None => BTreeMap::from([(vec![(i, j)], Q::one())]),
    }
}

fn poly_mul(a: &BTreeMap<Mono, Q>, b: &BTreeMap<Mono, Q>) -> BTreeMap<Mono, Q> {
    let mut out: BTreeMap<Mono, Q> = BTreeMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mut m = ma.clone();
            m.extend(mb.iter().copied());
            m.sort_unstable();
            *out.entry(m).or_insert_with(Q::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_text(p: &BTreeMap<Mono, Q>) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (m, c) in p.iter().rev() {
        let neg = *c < Q::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let vars: Vec<String> = m.iter().map(|(i, j)| format!("x_{i}_{j}")).collect();
        if vars.is_empty() {
            s.push_str(&fmt_rational(&mag));
        } else if mag.is_one() {
            s.push_str(&vars.join("*"));
        } else {
            s.push_str(&format!("{}*{}", fmt_rational(&mag), vars.join("*")));
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuliIdeal {
    /// Concurrent triples (sorted, deduplicated) and their minors.
    pub concurrent: Vec<[usize; 3]>,
    pub generators: Vec<String>,
    /// Triples that must not be concurrent.
    pub non_concurrent: Vec<[usize; 3]>,
}

impl ModuliIdeal {
    pub fn to_text(&self) -> String {
        let mut s = format!("# ideal I: {} generators\n", self.generators.len());
        for (t, g) in self.concurrent.iter().zip(&self.generators) {
            s.push_str(&format!("{g}    # lines {} {} {}\n", t[0], t[1], t[2]));
        }
        s.push_str(&format!("# inequations J: {} non-concurrent triples\n", self.non_concurrent.len()));
        for t in &self.non_concurrent {
            s.push_str(&format!("{} {} {}\n", t[0], t[1], t[2]));
        }
        s
    }
}

/// Determinantal ideal of a 3×n matrix of line coordinates: one 3×3 minor for
/// each triple of lines sharing a listed point, plus the list of triples that
/// share none. `pins` fixes matrix entries `(row, column)` to constants.
pub fn moduli_ideal_export(n_lines: usize, points: &[Vec<usize>], pins: &[((usize, usize), Q)]) -> Result<ModuliIdeal> {
    let mut pin_map: HashMap<(usize, usize), Q> = HashMap::new();
    for ((i, j), v) in pins {
        if *i >= 3 || *j >= n_lines {
            return Err(Error::Invalid(format!("pin ({i}, {j}) outside the 3×{n_lines} matrix")));
        }
        if let Some(old) = pin_map.insert((*i, *j), v.clone()) {
            if &old != v {
                return Err(Error::Invalid(format!("entry ({i}, {j}) pinned twice")));
            }
        }
    }
    for j in 0..n_lines {
        if (0..3).all(|i| pin_map.get(&(i, j)).is_some_and(|v| v.is_zero())) {
            return Err(Error::Invalid(format!("column {j} pinned to zero")));
        }
    }
    let mut concurrent: BTreeSet<[usize; 3]> = BTreeSet::new();
    for ls in points {
        let mut ls = ls.clone();
        ls.sort_unstable();
        ls.dedup();
        if ls.iter().any(|&l| l >= n_lines) {
            return Err(Error::Invalid("line index out of range".into()));
        }
        for a in 0..ls.len() {
            for b in a + 1..ls.len() {
                for c in b + 1..ls.len() {
                    concurrent.insert([ls[a], ls[b], ls[c]]);
                }
            }
        }
    }
    let minor = |t: &[usize; 3]| {
        let e = |r: usize, k: usize| entry(&pin_map, r, t[k]);
        let mut total: BTreeMap<Mono, Q> = BTreeMap::new();
        for (perm, sign) in [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([0, 2, 1], -1), ([2, 1, 0], -1), ([1, 0, 2], -1)] {
            let prod = poly_mul(&poly_mul(&e(0, perm[0]), &e(1, perm[1])), &e(2, perm[2]));
            for (m, c) in prod {
                *total.entry(m).or_insert_with(Q::zero) += c * Q::from_integer(sign.into());
            }
        }
        total.retain(|_, c| !c.is_zero());
        poly_text(&total)
    };
    let concurrent: Vec<[usize; 3]> = concurrent.into_iter().collect();
    let generators = concurrent.iter().map(minor).collect();
    let set: BTreeSet<[usize; 3]> = concurrent.iter().copied().collect();
    let mut non_concurrent = Vec::new();
    for a in 0..n_lines {
        for b in a + 1..n_lines {
            for c in b + 1..n_lines {
                if !set.contains(&[a, b, c]) {
                    non_concurrent.push([a, b, c]);
                }
            }
        }
    }
    Ok(ModuliIdeal { concurrent, generators, non_concurrent })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_resolution() {
        let s = IncidenceStructure::new(4, vec![vec![0, 1], vec![2, 3], vec![0, 2], vec![1, 3]]).unwrap();
        let r = resolvable(&s, 2).unwrap();
        assert_eq!(r, vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn json_round_trip() {
        let s = IncidenceStructure::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let j = s.to_json();
        assert_eq!(j.flags, vec!["10", "11", "01"]);
        assert_eq!(IncidenceStructure::from_json(&j).unwrap(), s);
    }

    #[test]
    fn triangle_ideal() {
        let pts = vec![vec![0, 1], vec![1, 2], vec![0, 2]];
        let id = moduli_ideal_export(3, &pts, &[]).unwrap();
        assert!(id.generators.is_empty());
        assert_eq!(id.non_concurrent, vec![[0, 1, 2]]);
    }

    #[test]
    fn one_by_one() {
        let s = IncidenceStructure::new(1, vec![vec![0]]).unwrap();
        assert_eq!(census_type(&s).to_string(), "(1_1)");
    }
}
