//! Random generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use rees_hodge::cplx::{direct_sum_complex, FilteredComplex, MhcMorphism, PreMHC};
use rees_hodge::filtration::{FilteredSpace, HodgeFiltration};
use rees_hodge::matrix::{Matrix, Vector};
use rees_hodge::mhs::{hom_mhs, PreMHS};
use rees_hodge::scalar::Scalar;
use rees_hodge::subspace::Subspace;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn small(rng: &mut StdRng, complex: bool) -> Scalar {
    let re = rng.random_range(-3..=3);
    let im = if complex { rng.random_range(-2..=2) } else { 0 };
    Scalar::gaussian(re, im)
}

/// A random invertible matrix with small entries.
pub fn invertible(rng: &mut StdRng, n: usize, complex: bool) -> Matrix {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| small(rng, complex));
        if m.rank() == n {
            return m;
        }
    }
}

/// Random filtration: random basis, random indices in `lo..=hi`.
pub fn filtered_space(rng: &mut StdRng, n: usize, lo: i64, hi: i64, complex: bool) -> FilteredSpace {
    let p = invertible(rng, n, complex);
    let tagged: Vec<(i64, Vector)> = (0..n).map(|c| (rng.random_range(lo..=hi), p.column(c))).collect();
    FilteredSpace::from_weighted_vectors(n, &tagged).expect("basis spans")
}

fn random_allowed(rng: &mut StdRng, src: &[i64], tgt: &[i64]) -> Matrix {
    Matrix::from_fn(tgt.len(), src.len(), |r, c| {
        if tgt[r] <= src[c] && rng.random_bool(0.6) {
            int(rng.random_range(-2..=2))
        } else {
            Scalar::zero()
        }
    })
}

/// A random filtered map in coordinate filtrations with `next ∘ prev = 0`.
fn random_following(rng: &mut StdRng, prev: &Matrix, src: &[i64], tgt: &[i64]) -> Matrix {
    let slots: Vec<(usize, usize)> =
        (0..tgt.len()).flat_map(|r| (0..src.len()).map(move |c| (r, c))).filter(|&(r, c)| tgt[r] <= src[c]).collect();
    if slots.is_empty() {
        return Matrix::zeros(tgt.len(), src.len());
    }
    // Row r of next times column c of prev vanishes.
    let mut eqs = Vec::new();
    for r in 0..tgt.len() {
        for c in 0..prev.cols() {
            eqs.push(slots.iter().map(|&(rr, i)| if rr == r { prev[(i, c)].clone() } else { Scalar::zero() }).collect::<Vector>());
        }
    }
    let sols = if eqs.is_empty() { Matrix::identity(slots.len()) } else { Matrix::from_rows(slots.len(), eqs).unwrap().kernel() };
    let mut out = Matrix::zeros(tgt.len(), src.len());
    for row in sols.row_vectors() {
        if rng.random_bool(0.7) {
            let coef = int(rng.random_range(-2..=2));
            for (&(r, c), x) in slots.iter().zip(&row) {
                let v = &out[(r, c)] + &(&coef * x);
                out[(r, c)] = v;
            }
        }
    }
    out
}

/// Random filtered complex of length `≤ max_len`: coordinate filtrations and
/// random filtered differentials, then a random change of basis per term.
pub fn filtered_complex(rng: &mut StdRng, max_len: usize, max_dim: usize, complex: bool) -> FilteredComplex {
    let len = rng.random_range(1..=max_len);
    let lo = rng.random_range(-2..=0);
    let weights: Vec<Vec<i64>> = (0..len).map(|_| (0..rng.random_range(0..=max_dim)).map(|_| rng.random_range(-2..=2)).collect()).collect();
    let mut diffs: Vec<Matrix> = Vec::new();
    for i in 0..len.saturating_sub(1) {
        let d = match diffs.last() {
            None => random_allowed(rng, &weights[i], &weights[i + 1]),
            Some(prev) => random_following(rng, prev, &weights[i], &weights[i + 1]),
        };
        diffs.push(d);
    }
    let gs: Vec<Matrix> = weights.iter().map(|w| invertible(rng, w.len(), complex)).collect();
    let terms = weights
        .iter()
        .zip(&gs)
        .map(|(w, g)| {
            let tagged: Vec<(i64, Vector)> = w.iter().enumerate().map(|(c, k)| (*k, g.column(c))).collect();
            FilteredSpace::from_weighted_vectors(w.len(), &tagged).unwrap()
        })
        .collect();
    let diffs = diffs.iter().enumerate().map(|(i, d)| &(&gs[i + 1] * d) * &gs[i].inverse().unwrap()).collect();
    FilteredComplex::new(lo, terms, diffs).expect("generator produces complexes")
}

/// Two-term complex in degrees `-1, 0` of ranks `≤ max_rank`.
pub fn two_term(rng: &mut StdRng, max_rank: usize) -> FilteredComplex {
    let a: Vec<i64> = (0..rng.random_range(0..=max_rank)).map(|_| rng.random_range(-3..=3)).collect();
    let b: Vec<i64> = (0..rng.random_range(0..=max_rank)).map(|_| rng.random_range(-3..=3)).collect();
    let d = random_allowed(rng, &a, &b);
    let (ga, gb) = (invertible(rng, a.len(), false), invertible(rng, b.len(), false));
    let tag = |w: &[i64], g: &Matrix| {
        let tagged: Vec<(i64, Vector)> = w.iter().enumerate().map(|(c, k)| (*k, g.column(c))).collect();
        FilteredSpace::from_weighted_vectors(w.len(), &tagged).unwrap()
    };
    let d = &(&gb * &d) * &ga.inverse().unwrap();
    FilteredComplex::new(-1, vec![tag(&a, &ga), tag(&b, &gb)], vec![d]).unwrap()
}

/// Rank-two pure structure with Hodge types `(p, q)` and `(q, p)`, `p > q`, at weight `k`.
pub fn pure_pair(p: i64, q: i64, k: i64) -> PreMHS {
    let v: Vector = vec![int(1), Scalar::i()];
    let hodge = HodgeFiltration::new(2, vec![(p, Subspace::span_of(2, &[v])), (q, Subspace::full(2))]).unwrap();
    PreMHS::new(FilteredSpace::pure(2, k), hodge).unwrap()
}

/// Elementary split pieces of mixed Hodge complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece {
    /// Rank one, type `(p, p)`, degree `j`, weight `2p - j`.
    Tate { j: i64, p: i64 },
    /// Rank two, types `(p, q), (q, p)`, degree `j`, weight `p + q - j`.
    Pair { j: i64, p: i64, q: i64 },
    /// `C → C` in degrees `j, j+1` with equal weight `k` and type `p`: acyclic on `Gr^W`.
    Acyclic { j: i64, k: i64, p: i64 },
    /// `C → C` in degrees `j, j+1`, weights `k + 1` and `k`, type `(p, p)` with `2p = k + 1 + j`.
    Shifted { j: i64, p: i64 },
}

impl Piece {
    pub fn random(rng: &mut StdRng) -> Piece {
        let j = rng.random_range(-3..=-1);
        let p = rng.random_range(-2..=2);
        match rng.random_range(0..4) {
            0 => Piece::Tate { j, p },
            1 => Piece::Pair { j, p: p + 1, q: p - rng.random_range(0..=1) },
            2 => Piece::Acyclic { j, k: rng.random_range(-2..=2), p },
            _ => Piece::Shifted { j, p },
        }
    }

    pub fn complex(&self) -> PreMHC {
        let id = Matrix::identity(1);
        match *self {
            Piece::Tate { j, p } => PreMHC::concentrated(rees_hodge::mhs::make_tate(p, 2 * p - j), j),
            Piece::Pair { j, p, q } => PreMHC::concentrated(pure_pair(p, q, p + q - j), j),
            Piece::Acyclic { j, k, p } => {
                let t = rees_hodge::mhs::make_tate(p, k);
                PreMHC::new(j, vec![t.clone(), t], vec![id]).unwrap()
            }
            Piece::Shifted { j, p } => {
                let k = 2 * p - j - 1;
                PreMHC::new(j, vec![rees_hodge::mhs::make_tate(p, k + 1), rees_hodge::mhs::make_tate(p, k)], vec![id]).unwrap()
            }
        }
    }
}

pub fn sum_of(pieces: &[Piece]) -> PreMHC {
    pieces.iter().fold(PreMHC::zero(), |acc, p| direct_sum_complex(&acc, &p.complex()))
}

/// Offset of each piece's block in degree `j` of [`sum_of`].
fn offsets(pieces: &[Piece], j: i64) -> Vec<usize> {
    let mut out = Vec::new();
    let mut acc = 0;
    for p in pieces {
        out.push(acc);
        acc += p.complex().dim(j);
    }
    out
}

/// A random chain map between sums of pieces, built piece to piece.
fn random_piece_map(
    src: &[Piece],
    tgt: &[Piece],
    j: i64,
    src_sum: &PreMHC,
    tgt_sum: &PreMHC,
    scalars: &BTreeMap<(usize, usize), Scalar>,
    homs: &BTreeMap<(usize, usize), Matrix>,
) -> Matrix {
    let (so, to) = (offsets(src, j), offsets(tgt, j));
    let mut m = Matrix::zeros(tgt_sum.dim(j), src_sum.dim(j));
    for (a, pa) in src.iter().enumerate() {
        for (b, pb) in tgt.iter().enumerate() {
            let (ca, cb) = (pa.complex(), pb.complex());
            if ca.dim(j) == 0 || cb.dim(j) == 0 {
                continue;
            }
            let block = if let Some(c) = scalars.get(&(a, b)) {
                Matrix::identity(1).scale(c)
            } else if let Some(h) = homs.get(&(a, b)) {
                h.clone()
            } else {
                continue;
            };
            for r in 0..block.rows() {
                for c in 0..block.cols() {
                    m[(to[b] + r, so[a] + c)] = block[(r, c)].clone();
                }
            }
        }
    }
    m
}

pub fn transport_complex(c: &PreMHC, gs: &BTreeMap<i64, Matrix>) -> PreMHC {
    let terms = c.degrees().map(|j| c.term(j).transport(&gs[&j]).unwrap()).collect();
    let diffs = (c.lo()..c.hi()).map(|j| &(&gs[&(j + 1)] * &c.diff(j)) * &gs[&j].inverse().unwrap()).collect();
    PreMHC::new(c.lo(), terms, diffs).unwrap()
}

/// A levelwise surjective morphism `U ⊕ K → U`, `(u, k) ↦ u + h(k)`, with `h`
/// a random piece-to-piece morphism, seen through random real bases.
pub fn surjective_morphism(rng: &mut StdRng) -> (MhcMorphism, PreMHC) {
    let u_pieces: Vec<Piece> = (0..rng.random_range(1..=3)).map(|_| Piece::random(rng)).collect();
    let k_pieces: Vec<Piece> = (0..rng.random_range(1..=3)).map(|_| Piece::random(rng)).collect();
    let (u, k) = (sum_of(&u_pieces), sum_of(&k_pieces));
    let mut scalars = BTreeMap::new();
    let mut homs = BTreeMap::new();
    for (a, pa) in k_pieces.iter().enumerate() {
        for (b, pb) in u_pieces.iter().enumerate() {
            let two_term = |p: &Piece| matches!(p, Piece::Acyclic { .. } | Piece::Shifted { .. });
            if two_term(pa) && pa == pb {
                scalars.insert((a, b), int(rng.random_range(-2..=2)));
            } else if !two_term(pa) && !two_term(pb) {
                let (ca, cb) = (pa.complex(), pb.complex());
                if ca.lo() == cb.lo() {
                    let basis = hom_mhs(&ca.term(ca.lo()), &cb.term(cb.lo()));
                    let mut h = Matrix::zeros(cb.dim(cb.lo()), ca.dim(ca.lo()));
                    for b in &basis {
                        h = h.add(&b.scale(&int(rng.random_range(-2..=2))));
                    }
                    homs.insert((a, b), h);
                }
            }
        }
    }
    let v = direct_sum_complex(&u, &k);
    let lo = v.lo().min(u.lo());
    let hi = v.hi().max(u.hi());
    let mut maps = BTreeMap::new();
    for j in lo..=hi {
        let h = random_piece_map(&k_pieces, &u_pieces, j, &k, &u, &scalars, &homs);
        maps.insert(j, Matrix::identity(u.dim(j)).hstack(&h));
    }
    let gv: BTreeMap<i64, Matrix> = (lo..=hi).map(|j| (j, invertible(rng, v.dim(j), false))).collect();
    let gu: BTreeMap<i64, Matrix> = (lo..=hi).map(|j| (j, invertible(rng, u.dim(j), false))).collect();
    let (v2, u2) = (transport_complex(&v, &gv), transport_complex(&u, &gu));
    let maps2 = maps.iter().map(|(j, f)| (*j, &(&gu[j] * f) * &gv[j].inverse().unwrap())).collect();
    (MhcMorphism::new(v2, u2, maps2).expect("generator produces morphisms"), k)
}

/// Brute-force `Ext^1` of rank-one structures `A = (type pa, weight wa)`,
/// `B = (type pb, weight wb)`: enumerates extension data on `E = B ⊕ A` over a
/// grid, keeps the bistrict ones with a lift compatible with both `W` and `F`,
/// and counts isomorphism classes under `a ↦ a + x b`, `x` real. Each free
/// real parameter contributes a factor five, so the dimension is `log_5`.
/// Subspaces are interned and intermediate results memoized across calls.
pub struct ExtOracle {
    spaces: Vec<Subspace>,
    ids: HashMap<Subspace, usize>,
    /// Valid filtrations keyed by `(jump of A, jump of B, real lines only)`.
    candidates: HashMap<(i64, i64, bool), Candidates>,
    lifts: HashMap<(usize, usize), bool>,
}

struct Candidates {
    /// Steps at indices `min(ja, jb) - 1 ..= max(ja, jb) + 1`, as interned ids.
    list: Vec<Vec<usize>>,
    /// Index of the image under `a ↦ a + x b`, `x = -4..=4`, if it lies on the grid.
    act: Vec<Vec<Option<usize>>>,
}

const SHIFTS: std::ops::RangeInclusive<i64> = -4..=4;

impl Default for ExtOracle {
    fn default() -> Self {
        Self::new()
    }
}

impl ExtOracle {
    pub fn new() -> Self {
        ExtOracle { spaces: Vec::new(), ids: HashMap::new(), candidates: HashMap::new(), lifts: HashMap::new() }
    }

    fn intern(&mut self, s: Subspace) -> usize {
        if let Some(&i) = self.ids.get(&s) {
            return i;
        }
        self.spaces.push(s.clone());
        self.ids.insert(s, self.spaces.len() - 1);
        self.spaces.len() - 1
    }

    fn candidates(&mut self, ja: i64, jb: i64, real: bool) {
        if self.candidates.contains_key(&(ja, jb, real)) {
            return;
        }
        let e0: Vector = vec![int(1), int(0)];
        let b_line = Subspace::span_of(2, &[e0]);
        let proj = Matrix::from_rows(2, vec![vec![int(0), int(1)]]).unwrap();
        let grid: Vec<i64> = (-2..=2).collect();
        let params: Vec<Scalar> = if real {
            grid.iter().map(|&r| int(r)).collect()
        } else {
            grid.iter().flat_map(|&u| grid.iter().map(move |&v| Scalar::gaussian(u, v))).collect()
        };
        let mut lines: Vec<Subspace> = params.iter().map(|c| Subspace::span_of(2, &[vec![c.clone(), int(1)]])).collect();
        lines.push(b_line.clone());
        let range: Vec<i64> = (ja.min(jb) - 1..=ja.max(jb) + 1).collect();
        let mut list: Vec<Vec<Subspace>> = Vec::new();
        for &k1 in &[ja, jb] {
            for &k2 in &[ja, jb] {
                if k1 > k2 {
                    continue;
                }
                for l in &lines {
                    let f: Vec<Subspace> = range
                        .iter()
                        .map(|&k| {
                            if k < k1 {
                                Subspace::zero(2)
                            } else if k < k2 {
                                l.clone()
                            } else {
                                Subspace::full(2)
                            }
                        })
                        .collect();
                    let valid = range.iter().zip(&f).all(|(&k, s)| {
                        let on_b = if k >= jb { b_line.clone() } else { Subspace::zero(2) };
                        let on_a = if k >= ja { Subspace::full(1) } else { Subspace::zero(1) };
                        s.meet(&b_line) == on_b && s.image(&proj) == on_a
                    });
                    if valid && !list.contains(&f) {
                        list.push(f);
                    }
                }
            }
        }
        let ids: Vec<Vec<usize>> = list.iter().map(|f| f.iter().map(|s| self.intern(s.clone())).collect()).collect();
        let act = list
            .iter()
            .map(|f| {
                SHIFTS
                    .map(|x| {
                        let g = Matrix::from_rows(2, vec![vec![int(1), int(x)], vec![int(0), int(1)]]).unwrap();
                        let image: Vec<usize> = f.iter().map(|s| self.intern(s.image(&g))).collect();
                        ids.iter().position(|c| *c == image)
                    })
                    .collect()
            })
            .collect();
        self.candidates.insert((ja, jb, real), Candidates { list: ids, act });
    }

    /// Does `W ∩ F` surject onto `A`?
    fn lift(&mut self, w: usize, f: usize) -> bool {
        if let Some(&ok) = self.lifts.get(&(w, f)) {
            return ok;
        }
        let proj = Matrix::from_rows(2, vec![vec![int(0), int(1)]]).unwrap();
        let ok = self.spaces[w].meet(&self.spaces[f]).image(&proj).dim() == 1;
        self.lifts.insert((w, f), ok);
        ok
    }

    pub fn ext1(&mut self, pa: i64, wa: i64, pb: i64, wb: i64) -> usize {
        self.candidates(wa, wb, true);
        // F^p is stored as the increasing filtration at index -p.
        self.candidates(-pa, -pb, false);
        let w_at_a = (wa - wa.min(wb) + 1) as usize;
        let f_at_a = (-pa - (-pa).min(-pb) + 1) as usize;
        let ws: Vec<usize> = {
            let c = &self.candidates[&(wa, wb, true)];
            (0..c.list.len()).filter(|&i| c.list[i].iter().all(|&s| self.spaces[s].is_real())).collect()
        };
        let nf = self.candidates[&(-pa, -pb, false)].list.len();
        let mut points = Vec::new();
        for &wi in &ws {
            for fi in 0..nf {
                let w = self.candidates[&(wa, wb, true)].list[wi][w_at_a];
                let f = self.candidates[&(-pa, -pb, false)].list[fi][f_at_a];
                if self.lift(w, f) {
                    points.push((wi, fi));
                }
            }
        }
        let (cw, cf) = (&self.candidates[&(wa, wb, true)], &self.candidates[&(-pa, -pb, false)]);
        let mut reps: HashSet<(usize, usize)> = HashSet::new();
        for (wi, fi) in points {
            let known = (0..SHIFTS.count()).any(|x| match (cw.act[wi][x], cf.act[fi][x]) {
                (Some(a), Some(b)) => reps.contains(&(a, b)),
                _ => false,
            });
            if !known {
                reps.insert((wi, fi));
            }
        }
        let n = reps.len();
        (0..4).find(|d| 5usize.pow(*d) == n).unwrap_or_else(|| panic!("{n} classes is not a power of five")) as usize
    }
}

pub fn ext1_oracle(pa: i64, wa: i64, pb: i64, wb: i64) -> usize {
    ExtOracle::new().ext1(pa, wa, pb, wb)
}

/// Brute-force `Hom` of rank-one structures: is the identity of the line filtered?
pub fn hom_oracle(pa: i64, wa: i64, pb: i64, wb: i64) -> usize {
    let range = -20..=20;
    let ok = range.clone().all(|k| !(k >= wa) || k >= wb) && range.clone().all(|p| !(p <= pa) || p <= pb);
    usize::from(ok)
}
