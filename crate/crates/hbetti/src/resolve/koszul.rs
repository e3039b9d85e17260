//! `dim Tor_p(R/m, M)_q` as homology of the Koszul complex tensored with `M`,
//! computed degree by degree with linear algebra over ℚ.

use std::collections::HashMap;

use super::linalg::{Echelon, SparseVec};
use super::BettiTablePQ;
use crate::grmodule::PresentedGradedModule;
use crate::polyring::{GbEngine, Monomial};

/// The degree-`d` piece `F_d / N_d` of a presented module.
struct Piece {
    /// Basis of `F_d`: (generator, monomial).
    basis: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
    /// Spanning vectors of `N_d` in `F_d` coordinates.
    relations: Vec<SparseVec>,
}

struct Pieces<'a> {
    m: &'a PresentedGradedModule,
    rel_deg: Vec<i64>,
    cache: HashMap<i64, Piece>,
}

impl<'a> Pieces<'a> {
    fn new(m: &'a PresentedGradedModule) -> Self {
        Pieces { m, rel_deg: m.relation_degrees(), cache: HashMap::new() }
    }

    fn get(&mut self, d: i64) -> &Piece {
        if !self.cache.contains_key(&d) {
            let piece = self.build(d);
            self.cache.insert(d, piece);
        }
        &self.cache[&d]
    }

    fn build(&self, d: i64) -> Piece {
        let n = self.m.nvars();
        let mut basis = Vec::new();
        for (g, &dg) in self.m.degrees.iter().enumerate() {
            if d >= dg && (d - dg) % 2 == 0 {
                for mon in Monomial::all_of_total(n, ((d - dg) / 2) as u32) {
                    basis.push((g, mon));
                }
            }
        }
        let index: HashMap<_, _> = basis.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut relations = Vec::new();
        for (rel, &dr) in self.m.relations.iter().zip(&self.rel_deg) {
            if d < dr || (d - dr) % 2 != 0 {
                continue;
            }
            for mon in Monomial::all_of_total(n, ((d - dr) / 2) as u32) {
                let mut v = SparseVec::new();
                for t in rel.terms() {
                    let k = index[&(t.pos as usize, t.mon.mul(&mon))];
                    v.insert(k, t.coef.clone());
                }
                relations.push(v);
            }
        }
        Piece { basis, index, relations }
    }
}

fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= n {
        rec(0, n, p, &mut Vec::new(), &mut out);
    }
    out
}

/// Rank of `∂_p : Λ^p ⊗ M_{q-2p} → Λ^{p-1} ⊗ M_{q-2p+2}` on the quotient
/// spaces, as `rank(∂(V) ∪ N') − rank(N')`. Also returns `dim` of the source.
fn koszul_rank(pieces: &mut Pieces, n: usize, p: usize, q: i64) -> (usize, usize) {
    let src_d = q - 2 * p as i64;
    let src_subsets = subsets(n, p);
    let (src_basis, src_rank) = {
        let s = pieces.get(src_d);
        let mut e = Echelon::new();
        for r in &s.relations {
            e.insert(r.clone());
        }
        (s.basis.clone(), e.rank())
    };
    let src_dim = src_subsets.len() * (src_basis.len() - src_rank);
    if p == 0 || src_basis.is_empty() {
        return (0, src_dim);
    }
    let tgt_subsets = subsets(n, p - 1);
    let tgt_pos: HashMap<&[usize], usize> =
        tgt_subsets.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let tgt = pieces.get(src_d + 2);
    let width = tgt.basis.len();
    let mut e = Echelon::new();
    for (si, _) in tgt_subsets.iter().enumerate() {
        for r in &tgt.relations {
            e.insert(r.iter().map(|(k, c)| (si * width + k, c.clone())).collect());
        }
    }
    let base = e.rank();
    for s in &src_subsets {
        for &(g, mon) in &src_basis {
            let mut v = SparseVec::new();
            for (j, &k) in s.iter().enumerate() {
                let mut rest = s.clone();
                rest.remove(j);
                let row = tgt_pos[rest.as_slice()];
                let col = tgt.index[&(g, mon.mul(&Monomial::var(k)))];
                let sign = if j % 2 == 0 { 1 } else { -1 };
                v.insert(row * width + col, crate::exactalg::Rational::from_int(sign));
            }
            e.insert(v);
        }
    }
    (e.rank() - base, src_dim)
}

/// `dim_ℚ Tor_p(R/m, M)` in degree `q`.
pub fn koszul_tor(m: &PresentedGradedModule, p: usize, q: i64) -> u64 {
    let n = m.nvars();
    if p > n {
        return 0;
    }
    let mut pieces = Pieces::new(m);
    let (rank_p, dim) = koszul_rank(&mut pieces, n, p, q);
    let rank_next = if p < n { koszul_rank(&mut pieces, n, p + 1, q).0 } else { 0 };
    (dim - rank_p - rank_next) as u64
}

/// Upper end of the degree window: the larger of `max relation degree + 2n`
/// and the Taylor bound of the initial module. Betti numbers only grow under
/// passing to the initial module, and the Taylor resolution of a monomial
/// quotient `R/I` lives in degrees at most `deg lcm(I's generators)`.
fn window_top(m: &PresentedGradedModule) -> i64 {
    let n = m.nvars() as i64;
    let top_gen = *m.degrees.iter().max().unwrap();
    let top_rel = m.relation_degrees().into_iter().max().unwrap_or(top_gen);
    let mut hi = top_rel.max(top_gen) + 2 * n;
    let mut e = GbEngine::new(m.degrees.clone(), m.ngens());
    for r in &m.relations {
        e.push(r.clone());
    }
    e.complete(None);
    let mut lcms: Vec<Option<Monomial>> = vec![None; m.ngens()];
    for g in e.basis() {
        let t = g.lead().unwrap();
        let l = &mut lcms[t.pos as usize];
        *l = Some(l.map_or(t.mon, |x| x.lcm(&t.mon)));
    }
    for (pos, l) in lcms.iter().enumerate() {
        if let Some(l) = l {
            hi = hi.max(m.degrees[pos] + 2 * l.total() as i64);
        }
    }
    hi
}

/// All of `Tor(R/m, M)` over the window `[min generator degree, top]` (see
/// [`window_top`]), widened while the boundary degrees carry nonzero values.
/// The Gröbner basis only sizes the window; values come from linear algebra.
pub fn koszul_betti_table(m: &PresentedGradedModule) -> BettiTablePQ {
    let n = m.nvars();
    if m.ngens() == 0 {
        return BettiTablePQ::default();
    }
    let lo = *m.degrees.iter().min().unwrap();
    let mut hi = window_top(m);
    let mut pieces = Pieces::new(m);
    let mut table = BettiTablePQ::default();
    let mut q = lo;
    while q <= hi {
        let mut ranks = vec![0usize; n + 2];
        let mut dims = vec![0usize; n + 1];
        for p in 0..=n {
            let (r, d) = koszul_rank(&mut pieces, n, p, q);
            ranks[p] = r;
            dims[p] = d;
        }
        let mut any = false;
        for p in 0..=n {
            let v = dims[p] - ranks[p] - ranks[p + 1];
            if v > 0 {
                any = true;
                table.add(p, q, v as u64);
            }
        }
        if any && q >= hi - 1 {
            hi += 2;
        }
        q += 1;
    }
    table
}
