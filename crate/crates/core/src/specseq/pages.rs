//! Spectral sequences of the two filtrations of a double complex.
//!
//! Terms are the integral subquotients `E^r_s = Z^r_s / B^r_s` of the total
//! complex with
//! `Z^r_s = F_s ∩ d⁻¹(F_{s−r})` and `B^r_s = Z^{r−1}_{s−1} + d Z^{r−1}_{s+r−1}`,
//! so a class of `E^r` is carried by an actual chain whose boundary already
//! lies `r` filtration steps down; `d^r` is `d` applied to that chain.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lattice::{apply, Lattice};
use super::{DoubleComplex, DoubleMap, SpecSeqError};
use crate::homology::{AbelianGroup, HomologyReport, SparseMatrix};

/// Which index filters the total complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Filtration {
    /// Filter by `p`: `E^1` is vertical homology, `d^r` has bidegree `(−r, r−1)`.
    Column,
    /// Filter by `q`: `E^1` is horizontal homology, `d^r` has bidegree `(r−1, −r)`.
    Row,
}

type Key = (isize, isize, isize);

/// Filtered total complex with memoized `Z^r_s` lattices.
#[derive(Debug)]
struct Engine {
    kind: Filtration,
    n_min: isize,
    /// `d[n − n_min]`: degree `n` to `n − 1`.
    d: Vec<SparseMatrix<BigInt>>,
    dims: Vec<usize>,
    filt: Vec<Vec<isize>>,
    s_min: isize,
    s_max: isize,
    cache: Mutex<HashMap<Key, Arc<Lattice>>>,
}

impl Engine {
    fn new(dc: &DoubleComplex, kind: Filtration) -> Self {
        let range = dc.total_range();
        let n_min = *range.start();
        let mut d = Vec::new();
        let mut dims = Vec::new();
        let mut filt = Vec::new();
        for n in range {
            let (layout, dim) = dc.layout(n);
            d.push(dc.total_boundary(n));
            dims.push(dim);
            filt.push(
                layout
                    .iter()
                    .flat_map(|&(p, q, _)| {
                        let s = if kind == Filtration::Column { p } else { q };
                        std::iter::repeat(s).take(dc.rank(p, q))
                    })
                    .collect(),
            );
        }
        let (s_min, s_max) = match kind {
            Filtration::Column => (*dc.p_range().start(), *dc.p_range().end()),
            Filtration::Row => (*dc.q_range().start(), *dc.q_range().end()),
        };
        Engine { kind, n_min, d, dims, filt, s_min, s_max, cache: Mutex::new(HashMap::new()) }
    }

    /// Page index beyond which nothing changes.
    fn stable_r(&self) -> usize {
        (self.s_max - self.s_min + 2).max(1) as usize
    }

    fn idx(&self, n: isize) -> Option<usize> {
        let i = n - self.n_min;
        (0..self.dims.len() as isize).contains(&i).then_some(i as usize)
    }

    fn dim(&self, n: isize) -> usize {
        self.idx(n).map_or(0, |i| self.dims[i])
    }

    fn boundary(&self, n: isize) -> SparseMatrix<BigInt> {
        match self.idx(n) {
            Some(i) => self.d[i].clone(),
            None => SparseMatrix::zeros(self.dim(n - 1), 0),
        }
    }

    fn f(&self, s: isize, n: isize) -> Lattice {
        match self.idx(n) {
            Some(i) => Lattice::coordinate(self.dims[i], |j| self.filt[i][j] <= s),
            None => Lattice::zero(0),
        }
    }

    /// `Z^r_s`; cached by the two filtration levels it depends on.
    fn z(&self, r: usize, s: isize, n: isize) -> Arc<Lattice> {
        let clamp = |x: isize| x.clamp(self.s_min - 1, self.s_max);
        let key = (clamp(s), clamp(s - r as isize), n);
        if let Some(l) = self.cache.lock().expect("cache lock").get(&key) {
            return l.clone();
        }
        let l = Arc::new(self.f(key.0, n).preimage(&self.boundary(n), &self.f(key.1, n - 1)));
        self.cache.lock().expect("cache lock").insert(key, l.clone());
        l
    }

    fn b(&self, r: usize, s: isize, n: isize) -> Lattice {
        let lower = self.z(r - 1, s - 1, n);
        let from_above = self.z(r - 1, s + r as isize - 1, n + 1).image(&self.boundary(n + 1));
        lower.sum(&from_above)
    }

    fn unspot(&self, p: isize, q: isize) -> (isize, isize) {
        match self.kind {
            Filtration::Column => (p, p + q),
            Filtration::Row => (q, p + q),
        }
    }
}

/// One term `E^r_{p,q}` with its presentation: `generators / relations`,
/// both lattices in the total chain group of degree `p + q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub group: AbelianGroup,
    pub generators: Lattice,
    pub relations: Lattice,
}

/// `d^r` on generators: column `j` holds the coordinates of the image of
/// generator `j` of the source in the generators of the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Differential {
    pub source: (isize, isize),
    pub target: (isize, isize),
    pub matrix: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone)]
pub struct Page {
    pub r: usize,
    pub filtration: Filtration,
    pub terms: BTreeMap<(isize, isize), Term>,
    pub differentials: Vec<Differential>,
    window: Vec<(isize, isize)>,
    engine: Arc<Engine>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermReport {
    pub p: isize,
    pub q: isize,
    pub free_rank: usize,
    #[serde(with = "crate::homology::bigint_list")]
    pub torsion: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageReport {
    pub r: usize,
    pub terms: Vec<TermReport>,
}

impl Page {
    fn build(engine: Arc<Engine>, window: Vec<(isize, isize)>, r: usize) -> Result<Self, SpecSeqError> {
        let terms: BTreeMap<(isize, isize), Term> = window
            .par_iter()
            .map(|&(p, q)| {
                let (s, n) = engine.unspot(p, q);
                let generators = (*engine.z(r, s, n)).clone();
                let relations = engine.b(r, s, n);
                let group = generators
                    .quotient(&relations)
                    .ok_or(SpecSeqError::LiftingFailure { p, q, r, reason: "boundaries are not cycles" })?;
                Ok(((p, q), Term { group, generators, relations }))
            })
            .collect::<Result<_, SpecSeqError>>()?;
        let mut page = Page { r, filtration: engine.kind, terms, differentials: Vec::new(), window, engine };
        page.differentials = page.compute_differentials()?;
        Ok(page)
    }

    fn target_of(&self, p: isize, q: isize) -> (isize, isize) {
        let r = self.r as isize;
        match self.filtration {
            Filtration::Column => (p - r, q + r - 1),
            Filtration::Row => (p + r - 1, q - r),
        }
    }

    fn compute_differentials(&self) -> Result<Vec<Differential>, SpecSeqError> {
        let mut out = Vec::new();
        for (&(p, q), src) in &self.terms {
            let (tp, tq) = self.target_of(p, q);
            let Some(tgt) = self.terms.get(&(tp, tq)) else { continue };
            if src.generators.rank() == 0 || tgt.generators.rank() == 0 {
                continue;
            }
            let d = self.engine.boundary(p + q);
            let mut matrix = vec![Vec::with_capacity(src.generators.rank()); tgt.generators.rank()];
            for x in src.generators.basis() {
                let c = tgt.generators.coords(&apply(&d, x)).ok_or(SpecSeqError::LiftingFailure {
                    p,
                    q,
                    r: self.r,
                    reason: "image of a generator leaves the target generators",
                })?;
                for (row, v) in matrix.iter_mut().zip(c) {
                    row.push(v);
                }
            }
            if !tgt.relations.contains_lattice(&src.relations.image(&d)) {
                return Err(SpecSeqError::NotWellDefined { p, q, r: self.r });
            }
            out.push(Differential { source: (p, q), target: (tp, tq), matrix });
        }
        Ok(out)
    }

    pub fn term(&self, p: isize, q: isize) -> AbelianGroup {
        self.terms.get(&(p, q)).map(|t| t.group.clone()).unwrap_or_default()
    }

    pub fn differential(&self, p: isize, q: isize) -> Option<&Differential> {
        self.differentials.iter().find(|d| d.source == (p, q))
    }

    /// Every differential is zero modulo relations.
    pub fn differentials_vanish(&self) -> bool {
        self.differentials.iter().all(|d| {
            let tgt = &self.terms[&d.target];
            let d_tot = self.engine.boundary(d.source.0 + d.source.1);
            self.terms[&d.source].generators.basis().iter().all(|x| tgt.relations.contains(&apply(&d_tot, x)))
        })
    }

    /// `d^r ∘ d^r` lands in the relations at every spot.
    pub fn squares_to_zero(&self) -> bool {
        self.differentials.iter().all(|d| {
            let Some(next) = self.differential(d.target.0, d.target.1) else { return true };
            let last = &self.terms[&next.target];
            let (n, m) = (d.source.0 + d.source.1, d.target.0 + d.target.1);
            let (d1, d2) = (self.engine.boundary(n), self.engine.boundary(m));
            self.terms[&d.source].generators.basis().iter().all(|x| last.relations.contains(&apply(&d2, &apply(&d1, x))))
        })
    }

    pub fn report(&self) -> PageReport {
        PageReport {
            r: self.r,
            terms: self
                .terms
                .iter()
                .map(|(&(p, q), t)| TermReport { p, q, free_rank: t.group.free_rank, torsion: t.group.torsion.clone() })
                .collect(),
        }
    }
}

fn window(dc: &DoubleComplex) -> Vec<(isize, isize)> {
    dc.bidegrees().collect()
}

pub fn spectral_page(dc: &DoubleComplex, filtration: Filtration, r: usize) -> Result<Page, SpecSeqError> {
    assert!(r >= 1, "pages start at r = 1");
    if filtration == Filtration::Row && dc.is_twisted() {
        return Err(SpecSeqError::RowOfTwisted);
    }
    Page::build(Arc::new(Engine::new(dc, filtration)), window(dc), r)
}

/// Columnwise `d^V` homology with `d^1` induced by `d^H`.
#[allow(non_snake_case)]
pub fn vertical_E1(dc: &DoubleComplex) -> Result<Page, SpecSeqError> {
    spectral_page(dc, Filtration::Column, 1)
}

/// Rowwise `d^H` homology with `d^1` induced by `d^V`.
#[allow(non_snake_case)]
pub fn horizontal_E1(dc: &DoubleComplex) -> Result<Page, SpecSeqError> {
    spectral_page(dc, Filtration::Row, 1)
}

/// The next page. Each new term is checked to be the homology of the old
/// page at that spot through the identification
/// `Z^{r+1} → ker d^r / im d^r`, which must be onto with kernel `B^{r+1}`;
/// so representatives of a class are unique modulo the new relations.
pub fn turn_page(page: &Page) -> Result<Page, SpecSeqError> {
    let next = Page::build(page.engine.clone(), page.window.clone(), page.r + 1)?;
    let engine = &page.engine;
    let r = page.r as isize;
    page.terms.par_iter().try_for_each(|(&(p, q), term)| {
        let (s, n) = engine.unspot(p, q);
        let failure = |reason| SpecSeqError::LiftingFailure { p, q, r: page.r, reason };
        let out_target = engine.z(page.r, s - r, n - 1);
        let out_rel = engine.b(page.r, s - r, n - 1);
        debug_assert!(out_target.contains_lattice(&term.generators.image(&engine.boundary(n))));
        let kernel = term.generators.preimage(&engine.boundary(n), &out_rel);
        let incoming = engine.z(page.r, s + r, n + 1).image(&engine.boundary(n + 1));
        let image = term.relations.sum(&incoming);
        let new = &next.terms[&(p, q)];
        if kernel != new.generators.sum(&image) {
            return Err(failure("a cycle of d^r has no lift to the next page"));
        }
        let overlap = new.generators.preimage(&SparseMatrix::identity(new.generators.dim()), &image);
        if overlap != new.relations {
            return Err(failure("lifts are not unique modulo boundaries"));
        }
        let homology = kernel.quotient(&image).ok_or(failure("image of d^r is not in its kernel"))?;
        if homology != new.group {
            return Err(failure("term differs from the homology of the previous page"));
        }
        Ok(())
    })?;
    Ok(next)
}

/// Rational and torsion comparison on one antidiagonal `p + q = n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Antidiagonal {
    pub n: isize,
    pub limit_rank: usize,
    pub total_rank: usize,
    /// The direct sum of the limit terms differs from total homology only
    /// through a nontrivial extension (or a torsion discrepancy).
    pub extension_candidate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub filtration: Filtration,
    pub pages: Vec<PageReport>,
    /// First page index at which every later page is identical.
    pub limit_page: usize,
    pub limit: PageReport,
    pub total_homology: Vec<HomologyReport>,
    pub antidiagonals: Vec<Antidiagonal>,
    /// Largest `c` with `E^∞_{p,q} = 0` for every `p + q ≤ c` in the window.
    pub vanishing_frontier: isize,
}

impl SpectralReport {
    pub fn extension_candidates(&self) -> Vec<isize> {
        self.antidiagonals.iter().filter(|a| a.extension_candidate).map(|a| a.n).collect()
    }

    pub fn limit_term(&self, p: isize, q: isize) -> AbelianGroup {
        self.limit
            .terms
            .iter()
            .find(|t| (t.p, t.q) == (p, q))
            .map(|t| AbelianGroup { free_rank: t.free_rank, torsion: t.torsion.clone() })
            .unwrap_or_default()
    }

    /// `E^∞_{p,q} = 0` for every `p + q ≤ c` in the window.
    pub fn vanishes_through(&self, c: isize) -> bool {
        self.limit.terms.iter().all(|t| t.p + t.q > c || (t.free_rank == 0 && t.torsion.is_empty()))
    }
}

/// Turns pages until they stabilize and compares the limit with the
/// homology of the total complex. Free ranks must agree on every
/// antidiagonal; torsion disagreements are reported as extension candidates.
pub fn run_to_limit(
    dc: &DoubleComplex,
    filtration: Filtration,
    assert_vanish: Option<isize>,
) -> Result<SpectralReport, SpecSeqError> {
    let mut page = spectral_page(dc, filtration, 1)?;
    let stable = page.engine.stable_r();
    let mut pages = vec![page.report()];
    let mut limit_page = 1;
    while page.r < stable {
        if !page.squares_to_zero() {
            return Err(SpecSeqError::NotWellDefined { p: 0, q: 0, r: page.r });
        }
        let next = turn_page(&page)?;
        if !page.differentials_vanish() {
            limit_page = next.r;
        }
        page = next;
        pages.push(page.report());
    }
    let total = dc.total_complex()?;
    let mut antidiagonals = Vec::new();
    let mut total_homology = Vec::new();
    for n in dc.total_range() {
        let h = total.homology(n)?;
        let sum = page
            .terms
            .iter()
            .filter(|(&(p, q), _)| p + q == n)
            .fold(AbelianGroup::zero(), |acc, (_, t)| acc.direct_sum(&t.group));
        if sum.free_rank != h.free_rank {
            return Err(SpecSeqError::RankMismatch { n, limit: sum.free_rank, total: h.free_rank });
        }
        antidiagonals.push(Antidiagonal {
            n,
            limit_rank: sum.free_rank,
            total_rank: h.free_rank,
            extension_candidate: sum != h,
        });
        total_homology.push(HomologyReport::new(n, &h));
    }
    let limit = page.report();
    let frontier = limit
        .terms
        .iter()
        .filter(|t| t.free_rank > 0 || !t.torsion.is_empty())
        .map(|t| t.p + t.q - 1)
        .min()
        .unwrap_or(*dc.total_range().end());
    let report = SpectralReport {
        filtration,
        pages,
        limit_page,
        limit,
        total_homology,
        antidiagonals,
        vanishing_frontier: frontier,
    };
    if let Some(c) = assert_vanish {
        if let Some(t) = report.limit.terms.iter().find(|t| t.p + t.q <= c && (t.free_rank > 0 || !t.torsion.is_empty())) {
            return Err(SpecSeqError::VanishFailure {
                c,
                p: t.p,
                q: t.q,
                group: AbelianGroup { free_rank: t.free_rank, torsion: t.torsion.clone() },
                report: Box::new(report),
            });
        }
    }
    Ok(report)
}

/// Induced map on one term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermMap {
    pub p: isize,
    pub q: isize,
    /// Generator coordinates, target by source.
    pub matrix: Vec<Vec<BigInt>>,
    pub injective: bool,
    pub surjective: bool,
    pub zero: bool,
}

fn term_map(
    f: &SparseMatrix<BigInt>,
    (p, q): (isize, isize),
    src: &Term,
    tgt: &Term,
) -> Result<TermMap, SpecSeqError> {
    let mut matrix = vec![Vec::with_capacity(src.generators.rank()); tgt.generators.rank()];
    for x in src.generators.basis() {
        let c = tgt.generators.coords(&apply(f, x)).ok_or(SpecSeqError::NotAMorphism { p, q })?;
        for (row, v) in matrix.iter_mut().zip(c) {
            row.push(v);
        }
    }
    let image = src.generators.image(f);
    if !tgt.relations.contains_lattice(&src.relations.image(f)) {
        return Err(SpecSeqError::NotAMorphism { p, q });
    }
    Ok(TermMap {
        p,
        q,
        matrix,
        injective: src.generators.preimage(f, &tgt.relations) == src.relations,
        surjective: image.sum(&tgt.relations) == tgt.generators,
        zero: tgt.relations.contains_lattice(&image),
    })
}

/// Termwise map induced on `E^r` by a morphism of double complexes.
pub fn page_map(f: &DoubleMap, filtration: Filtration, r: usize) -> Result<Vec<TermMap>, SpecSeqError> {
    let src = spectral_page(&f.source, filtration, r)?;
    let tgt = spectral_page(&f.target, filtration, r)?;
    induced(f, &src, &tgt)
}

fn induced(f: &DoubleMap, src: &Page, tgt: &Page) -> Result<Vec<TermMap>, SpecSeqError> {
    let empty = Term { group: AbelianGroup::zero(), generators: Lattice::zero(0), relations: Lattice::zero(0) };
    let mut spots: Vec<(isize, isize)> = src.terms.keys().chain(tgt.terms.keys()).copied().collect();
    spots.sort_unstable();
    spots.dedup();
    spots
        .into_iter()
        .map(|(p, q)| {
            let m = f.total(p + q);
            let pad = |t: Option<&Term>, dim: usize| {
                t.cloned().unwrap_or(Term { generators: Lattice::zero(dim), relations: Lattice::zero(dim), ..empty.clone() })
            };
            term_map(&m, (p, q), &pad(src.terms.get(&(p, q)), m.cols()), &pad(tgt.terms.get(&(p, q)), m.rows()))
        })
        .collect()
}

/// The square formed by a morphism on `E^1` and `E^∞` at `(p, q)` with the
/// edge maps `E^1_{p,q} → E^∞_{p,q}` of source and target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSquare {
    pub first: TermMap,
    pub limit: TermMap,
    pub source_edge_onto: bool,
    pub target_edge_onto: bool,
    pub commutes: bool,
}

/// Defined where every `E^1` cycle survives to the limit (the bottom
/// filtration step), so the edge map is the identity on representatives.
pub fn edge_square(f: &DoubleMap, filtration: Filtration, p: isize, q: isize) -> Result<EdgeSquare, SpecSeqError> {
    let pages = |dc: &DoubleComplex| -> Result<(Page, Page), SpecSeqError> {
        let e1 = spectral_page(dc, filtration, 1)?;
        let inf = Page::build(e1.engine.clone(), e1.window.clone(), e1.engine.stable_r())?;
        Ok((e1, inf))
    };
    let (s1, s_inf) = pages(&f.source)?;
    let (t1, t_inf) = pages(&f.target)?;
    let edge_onto = |e1: &Page, inf: &Page| -> Result<bool, SpecSeqError> {
        let (Some(a), Some(b)) = (e1.terms.get(&(p, q)), inf.terms.get(&(p, q))) else { return Ok(true) };
        if !b.generators.contains_lattice(&a.generators) {
            return Err(SpecSeqError::EdgeUndefined { p, q });
        }
        Ok(a.generators.sum(&b.relations) == b.generators)
    };
    let source_edge_onto = edge_onto(&s1, &s_inf)?;
    let target_edge_onto = edge_onto(&t1, &t_inf)?;
    let find = |maps: Vec<TermMap>| maps.into_iter().find(|m| (m.p, m.q) == (p, q)).ok_or(SpecSeqError::OutsideWindow { p, q });
    let first = find(induced(f, &s1, &t1)?)?;
    let limit = find(induced(f, &s_inf, &t_inf)?)?;
    // both routes send a representative x to the class of f(x) in the
    // target limit term
    let m = f.total(p + q);
    let commutes = match (s1.terms.get(&(p, q)), t_inf.terms.get(&(p, q))) {
        (Some(a), Some(b)) => a.generators.basis().iter().all(|x| {
            let fx = apply(&m, x);
            let via_first = t1.terms[&(p, q)].generators.coords(&fx).map(|c| combine(t1.terms[&(p, q)].generators.basis(), &c));
            via_first.is_some_and(|y| {
                let diff: Vec<BigInt> = y.iter().zip(&fx).map(|(a, b)| a - b).collect();
                b.relations.contains(&diff) && b.generators.contains(&fx)
            })
        }),
        _ => true,
    };
    Ok(EdgeSquare { first, limit, source_edge_onto, target_edge_onto, commutes })
}

fn combine(basis: &[Vec<BigInt>], coeffs: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::default(); basis.first().map_or(0, Vec::len)];
    for (b, c) in basis.iter().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::SparseMatrix;

    fn m(rows: &[&[i64]]) -> SparseMatrix<BigInt> {
        let dense: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        SparseMatrix::from_dense(&dense)
    }

    #[test]
    fn zero_differentials_give_chain_groups() {
        let dc = DoubleComplex::new(0, 0, vec![vec![2, 1], vec![0, 3]], vec![], vec![]).unwrap();
        let e1 = vertical_E1(&dc).unwrap();
        assert_eq!(e1.term(0, 0), AbelianGroup::free(2));
        assert_eq!(e1.term(1, 1), AbelianGroup::free(3));
        let e2 = turn_page(&e1).unwrap();
        assert_eq!(e2.report().terms, e1.report().terms);
        assert_eq!(e2.r, 2);
        let rep = run_to_limit(&dc, Filtration::Row, None).unwrap();
        assert_eq!(rep.antidiagonals.iter().map(|a| a.total_rank).collect::<Vec<_>>(), vec![2, 1, 3]);
    }

    #[test]
    fn multiplication_by_two_in_a_column() {
        // one column Z --2--> Z; totals to Z/2 in degree 0
        let dc = DoubleComplex::new(0, 0, vec![vec![1, 1]], vec![], vec![((0, 1), m(&[&[2]]))]).unwrap();
        let e1 = vertical_E1(&dc).unwrap();
        assert_eq!(e1.term(0, 0), AbelianGroup::cyclic(2));
        assert_eq!(e1.term(0, 1), AbelianGroup::zero());
        let h = horizontal_E1(&dc).unwrap();
        assert_eq!(h.term(0, 1), AbelianGroup::free(1));
        let rep = run_to_limit(&dc, Filtration::Row, None).unwrap();
        assert_eq!(rep.limit_term(0, 0), AbelianGroup::cyclic(2));
        assert_eq!(rep.limit_page, 2);
        assert!(rep.extension_candidates().is_empty());
    }

    #[test]
    fn extension_is_flagged() {
        // H_0 = Z<a,b>/(a − 2b, 4b) = Z/4 filtered by columns as Z/2 under Z/2
        let dc = DoubleComplex::new(
            0,
            -1,
            vec![vec![0, 1], vec![1, 2]],
            vec![((1, 0), m(&[&[1, 0]]))],
            vec![((1, 0), m(&[&[2, -4]]))],
        )
        .unwrap();
        let rep = run_to_limit(&dc, Filtration::Column, None).unwrap();
        assert_eq!(rep.limit_term(0, 0), AbelianGroup::cyclic(2));
        assert_eq!(rep.limit_term(1, -1), AbelianGroup::cyclic(2));
        assert_eq!(rep.total_homology[1].torsion, vec![BigInt::from(4)]);
        assert_eq!(rep.extension_candidates(), vec![0]);
    }

    #[test]
    fn vanish_assertion() {
        let dc = DoubleComplex::new(0, 0, vec![vec![1], vec![1]], vec![((1, 0), m(&[&[1]]))], vec![]).unwrap();
        let rep = run_to_limit(&dc, Filtration::Column, Some(5)).unwrap();
        assert!(rep.vanishes_through(5));
        let point = DoubleComplex::new(0, 0, vec![vec![1]], vec![], vec![]).unwrap();
        let err = run_to_limit(&point, Filtration::Column, Some(0)).unwrap_err();
        assert!(matches!(err, SpecSeqError::VanishFailure { p: 0, q: 0, .. }));
        assert_eq!(run_to_limit(&point, Filtration::Column, None).unwrap().vanishing_frontier, -1);
    }
}
