//! Homogeneous Buchberger for submodules of free modules, with optional
//! tracking coordinates.
//!
//! Positions `0..top` form the module proper; positions `top..` are tracking
//! coordinates that never lead. Feeding `(a_i ; e_i)` for the columns of a
//! matrix `A` makes every basis element carry its expression in the columns,
//! and every input whose module part reduces to zero yields a syzygy.

use std::collections::{BTreeMap, HashSet};

use super::free::{combine_terms, ModuleVector, Term};
use super::Monomial;
use crate::exactalg::Rational;

#[derive(Debug, Clone)]
enum Pending {
    Input(ModuleVector),
    Pair(usize, usize),
}

#[derive(Debug, Clone)]
pub struct GbEngine {
    top: u32,
    degrees: Vec<i64>,
    basis: Vec<ModuleVector>,
    by_pos: Vec<Vec<usize>>,
    pending: BTreeMap<i64, Vec<Pending>>,
    open_pairs: HashSet<(usize, usize)>,
    syzygies: Vec<(i64, ModuleVector)>,
}

impl GbEngine {
    /// `degrees` covers both module and tracking positions.
    pub fn new(degrees: Vec<i64>, top: usize) -> Self {
        GbEngine {
            top: top as u32,
            degrees,
            basis: Vec::new(),
            by_pos: vec![Vec::new(); top],
            pending: BTreeMap::new(),
            open_pairs: HashSet::new(),
            syzygies: Vec::new(),
        }
    }

    pub fn top(&self) -> usize {
        self.top as usize
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    fn lead_degree(&self, t: &Term) -> i64 {
        2 * t.mon.total() as i64 + self.degrees[t.pos as usize]
    }

    /// Queues a homogeneous input; it is processed by `complete`.
    pub fn push(&mut self, v: ModuleVector) {
        if let Some(t) = v.lead() {
            let d = self.lead_degree(t);
            self.pending.entry(d).or_default().push(Pending::Input(v));
        }
    }

    /// Processes every pending input and pair of degree at most `bound`.
    pub fn complete(&mut self, bound: Option<i64>) {
        while let Some((&d, _)) = self.pending.first_key_value() {
            if bound.is_some_and(|b| d > b) {
                break;
            }
            let items = self.pending.remove(&d).unwrap();
            for item in items {
                let v = match item {
                    Pending::Input(v) => v,
                    Pending::Pair(i, j) => {
                        self.open_pairs.remove(&(i, j));
                        if self.chain_criterion(i, j) {
                            continue;
                        }
                        self.spoly(i, j)
                    }
                };
                let r = self.reduce(&v, false);
                self.insert(r);
            }
        }
    }

    fn lcm_of(&self, i: usize, j: usize) -> Monomial {
        self.basis[i].lead().unwrap().mon.lcm(&self.basis[j].lead().unwrap().mon)
    }

    fn chain_criterion(&self, i: usize, j: usize) -> bool {
        let pos = self.basis[i].lead().unwrap().pos as usize;
        let l = self.lcm_of(i, j);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        self.by_pos[pos].iter().any(|&k| {
            k != i
                && k != j
                && self.basis[k].lead().unwrap().mon.divides(&l)
                && !self.open_pairs.contains(&key(i, k))
                && !self.open_pairs.contains(&key(j, k))
        })
    }

    fn spoly(&self, i: usize, j: usize) -> ModuleVector {
        let (gi, gj) = (&self.basis[i], &self.basis[j]);
        let l = self.lcm_of(i, j);
        let mi = gi.lead().unwrap().mon.quotient_of(&l);
        let mj = gj.lead().unwrap().mon.quotient_of(&l);
        // basis elements are monic
        gi.mul_term(&Rational::one(), &mi).combine(gj, &-Rational::one(), &mj)
    }

    fn find_divisor(&self, t: &Term) -> Option<usize> {
        self.by_pos[t.pos as usize]
            .iter()
            .copied()
            .find(|&k| self.basis[k].lead().unwrap().mon.divides(&t.mon))
    }

    /// Reduces the module part of `v`. With `full` every module term is
    /// reduced; otherwise only leading terms until an irreducible one.
    pub fn reduce(&self, v: &ModuleVector, full: bool) -> ModuleVector {
        let mut done: Vec<Term> = Vec::new();
        let mut work = v.clone();
        while let Some(t) = work.lead() {
            if t.pos >= self.top {
                break;
            }
            match self.find_divisor(t) {
                Some(k) => {
                    let g = &self.basis[k];
                    let m = g.lead().unwrap().mon.quotient_of(&t.mon);
                    let c = -t.coef.clone();
                    work = combine_terms(work.terms(), g.terms(), &c, &m);
                }
                None if full => {
                    let mut terms = work.into_terms();
                    done.push(terms.remove(0));
                    work = ModuleVector::from_sorted_terms(terms);
                }
                None => break,
            }
        }
        if done.is_empty() {
            work
        } else {
            done.extend(work.into_terms());
            ModuleVector::from_sorted_terms(done)
        }
    }

    fn insert(&mut self, r: ModuleVector) {
        let Some(t) = r.lead() else { return };
        if t.pos >= self.top {
            let d = self.lead_degree(t);
            let top = self.top as usize;
            self.syzygies.push((d, r.slice(top, usize::MAX)));
            return;
        }
        let r = r.monic();
        let t = r.lead().unwrap().clone();
        let k = self.basis.len();
        for &i in &self.by_pos[t.pos as usize] {
            let l = self.basis[i].lead().unwrap().mon.lcm(&t.mon);
            let d = 2 * l.total() as i64 + self.degrees[t.pos as usize];
            self.pending.entry(d).or_default().push(Pending::Pair(i, k));
            self.open_pairs.insert((i, k));
        }
        self.by_pos[t.pos as usize].push(k);
        self.basis.push(r);
    }

    /// Inserts an element that is already reduced; used when growing a
    /// degree-truncated basis by a single new generator.
    pub fn insert_reduced(&mut self, r: ModuleVector) {
        self.insert(r);
    }

    pub fn basis(&self) -> &[ModuleVector] {
        &self.basis
    }

    /// Syzygies collected so far, as `(degree, vector)` over the tracking
    /// positions (renumbered from zero).
    pub fn syzygies(&self) -> &[(i64, ModuleVector)] {
        &self.syzygies
    }

    pub fn is_complete(&self) -> bool {
        self.pending.is_empty()
    }

    /// The reduced Gröbner basis of the module part, sorted by leading term
    /// (tracking coordinates are dropped).
    pub fn reduced_basis(&self) -> Vec<ModuleVector> {
        let top = self.top as usize;
        let mut keep: Vec<ModuleVector> = Vec::new();
        let mut leads: Vec<&Term> = Vec::new();
        let mut order: Vec<usize> = (0..self.basis.len()).collect();
        order.sort_by(|&a, &b| {
            let (ta, tb) = (self.basis[a].lead().unwrap(), self.basis[b].lead().unwrap());
            ta.pos.cmp(&tb.pos).then(ta.mon.cmp(&tb.mon)).then(a.cmp(&b))
        });
        for &i in &order {
            let t = self.basis[i].lead().unwrap();
            if leads.iter().any(|l| l.pos == t.pos && l.mon.divides(&t.mon)) {
                continue;
            }
            leads.push(t);
            keep.push(self.basis[i].slice(0, top));
        }
        let mut sub = GbEngine::new(self.degrees[..top].to_vec(), top);
        for v in &keep {
            let t = v.lead().unwrap().pos as usize;
            sub.by_pos[t].push(sub.basis.len());
            sub.basis.push(v.clone());
        }
        let mut out: Vec<ModuleVector> = Vec::with_capacity(keep.len());
        for v in &keep {
            let t = v.lead().unwrap();
            // reduce the tail only: strip the lead, reduce, add it back
            let tail = ModuleVector::from_sorted_terms(v.terms()[1..].to_vec());
            let rt = sub.reduce(&tail, true);
            let mut terms = vec![t.clone()];
            terms.extend(rt.into_terms());
            out.push(ModuleVector::from_sorted_terms(terms).monic());
        }
        out.sort_by(|a, b| {
            let (ta, tb) = (a.lead().unwrap(), b.lead().unwrap());
            super::free::term_cmp(ta.pos, &ta.mon, tb.pos, &tb.mon)
        });
        out
    }
}
