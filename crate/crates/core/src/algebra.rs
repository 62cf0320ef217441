//! Bound quiver algebras `A = kQ/I`.
//!
//! An [`Algebra`] is built from a quiver with relations by computing a path
//! basis of the quotient: paths are interned level by level and the ideal is
//! closed under left/right arrow multiplication inside a row-echelon basis
//! ordered by decreasing path length, so every path rewrites into shorter
//! ones. Construction fails when the reduction does not stabilize below the
//! configured length cap (the algebra is then infinite-dimensional or out of
//! reach).
//!
//! Paths are written source-to-target as the sequence of arrows traversed,
//! first arrow first: the composite of `g: 4→2` followed by `b: 2→1` is
//! `["g", "b"]`.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rat::Rat;
use serde::Deserialize;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

pub type VertexId = usize;
pub type ArrowId = usize;

/// Hard guard against path explosion in quivers with many cycles.
const PATH_COUNT_CAP: usize = 200_000;
const ROW_COUNT_CAP: usize = 500_000;

/// Default length cap for verifying finite-dimensionality.
pub const DEFAULT_MAX_PATH_LENGTH: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub from: VertexId,
    pub to: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateName(v.clone()));
            }
        }
        let mut arrow_index = HashMap::new();
        let mut arrs = Vec::new();
        for (i, (name, from, to)) in arrows.into_iter().enumerate() {
            if arrow_index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
            let from = *vertex_index
                .get(&from)
                .ok_or(Error::UnknownVertex(from.clone()))?;
            let to = *vertex_index
                .get(&to)
                .ok_or(Error::UnknownVertex(to.clone()))?;
            arrs.push(Arrow { name, from, to });
        }
        Ok(Quiver {
            vertices,
            arrows: arrs,
            vertex_index,
            arrow_index,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_id(&self, name: &str) -> Result<VertexId> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_id(&self, name: &str) -> Result<ArrowId> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    /// Same vertices, every arrow reversed (names preserved).
    pub fn reversed(&self) -> Quiver {
        let mut q = self.clone();
        for a in &mut q.arrows {
            std::mem::swap(&mut a.from, &mut a.to);
        }
        q
    }

    /// Validates an arrow-name sequence as a composable path and returns ids
    /// plus endpoints.
    fn resolve_path(&self, names: &[String]) -> Result<(Vec<ArrowId>, VertexId, VertexId)> {
        if names.is_empty() {
            return Err(Error::Syntax("empty path in relation".into()));
        }
        let mut ids = Vec::with_capacity(names.len());
        for n in names {
            ids.push(self.arrow_id(n)?);
        }
        for i in 0..ids.len() - 1 {
            if self.arrows[ids[i]].to != self.arrows[ids[i + 1]].from {
                return Err(Error::NonComposablePath {
                    path: names.to_vec(),
                    step: i,
                });
            }
        }
        let source = self.arrows[ids[0]].from;
        let target = self.arrows[*ids.last().unwrap()].to;
        Ok((ids, source, target))
    }
}

/// A linear combination of composable paths sharing source and target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Rat, Vec<ArrowId>)>,
    pub source: VertexId,
    pub target: VertexId,
}

impl Relation {
    pub fn new(quiver: &Quiver, terms: Vec<(Rat, Vec<String>)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Syntax("relation with no terms".into()));
        }
        let mut resolved = Vec::new();
        let mut endpoints = None;
        for (coef, names) in terms {
            if coef.is_zero() {
                return Err(Error::ZeroCoefficient(names.join(" ")));
            }
            let (ids, s, t) = quiver.resolve_path(&names)?;
            match endpoints {
                None => endpoints = Some((s, t)),
                Some((es, et)) if es == s && et == t => {}
                Some(_) => {
                    return Err(Error::RelationEndpoints(format!(
                        "term `{}` has endpoints ({}, {})",
                        names.join(" "),
                        quiver.vertex_name(s),
                        quiver.vertex_name(t)
                    )))
                }
            }
            resolved.push((coef, ids));
        }
        let (source, target) = endpoints.unwrap();
        Ok(Relation {
            terms: resolved,
            source,
            target,
        })
    }

    /// Arrow sequences reversed, for the opposite algebra.
    fn reversed(&self) -> Relation {
        Relation {
            terms: self
                .terms
                .iter()
                .map(|(c, p)| (c.clone(), p.iter().rev().copied().collect()))
                .collect(),
            source: self.target,
            target: self.source,
        }
    }
}

// ---------------------------------------------------------------------------
// path interning and ideal reduction
// ---------------------------------------------------------------------------

type PathId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct PathKey {
    source: VertexId,
    arrows: Vec<ArrowId>,
}

#[derive(Debug, Default)]
struct PathTable {
    keys: Vec<PathKey>,
    lens: Vec<usize>,
    targets: Vec<VertexId>,
    index: HashMap<PathKey, PathId>,
}

impl PathTable {
    fn intern(&mut self, key: PathKey, target: VertexId) -> PathId {
        if let Some(&id) = self.index.get(&key) {
            return id;
        }
        let id = self.keys.len();
        self.lens.push(key.arrows.len());
        self.targets.push(target);
        self.index.insert(key.clone(), id);
        self.keys.push(key);
        id
    }

    fn len_of(&self, p: PathId) -> usize {
        self.lens[p]
    }
}

/// Sorted-by-path-id sparse vector over interned paths.
type PathVec = Vec<(PathId, Rat)>;

fn pv_add_scaled(dst: &mut PathVec, src: &PathVec, c: &Rat) {
    let mut out: PathVec = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        if j == src.len() || (i < dst.len() && dst[i].0 < src[j].0) {
            out.push(dst[i].clone());
            i += 1;
        } else if i == dst.len() || src[j].0 < dst[i].0 {
            let v = c * &src[j].1;
            if !v.is_zero() {
                out.push((src[j].0, v));
            }
            j += 1;
        } else {
            let v = &dst[i].1 + &(c * &src[j].1);
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    *dst = out;
}

fn pv_leading(table: &PathTable, row: &PathVec) -> Option<PathId> {
    row.iter()
        .map(|(p, _)| *p)
        .min_by_key(|&p| (usize::MAX - table.len_of(p), p))
}

fn pv_reduce(rows: &[PathVec], lookup: &HashMap<PathId, usize>, row: &mut PathVec) {
    loop {
        let hit = row
            .iter()
            .find(|(p, _)| lookup.contains_key(p))
            .map(|(p, c)| (*p, c.clone()));
        let Some((p, c)) = hit else { break };
        let src = rows[lookup[&p]].clone();
        pv_add_scaled(row, &src, &-&c);
    }
}

struct PathBasisData {
    table: PathTable,
    /// basis path ids sorted by (length, id)
    basis: Vec<PathId>,
    basis_index: HashMap<PathId, usize>,
    /// normal form over basis indices, for every interned path of length
    /// at most `stable_at + 1`
    nf: Vec<Vec<(usize, Rat)>>,
    stable_at: usize,
}

fn compute_path_basis(
    quiver: &Quiver,
    relations: &[Relation],
    cap: usize,
) -> Result<PathBasisData> {
    let mut table = PathTable::default();
    for v in 0..quiver.vertex_count() {
        table.intern(
            PathKey {
                source: v,
                arrows: vec![],
            },
            v,
        );
    }
    let mut level_paths: Vec<Vec<PathId>> = vec![(0..quiver.vertex_count()).collect()];

    let mut out_arrows: Vec<Vec<ArrowId>> = vec![Vec::new(); quiver.vertex_count()];
    for (i, a) in quiver.arrows.iter().enumerate() {
        out_arrows[a.from].push(i);
    }

    let homogeneous = relations.iter().all(|r| {
        let lens: Vec<usize> = r.terms.iter().map(|(_, p)| p.len()).collect();
        lens.windows(2).all(|w| w[0] == w[1])
    });
    let max_rel_len = relations
        .iter()
        .flat_map(|r| r.terms.iter().map(|(_, p)| p.len()))
        .max()
        .unwrap_or(0);
    // Extra levels processed after apparent stabilization; length-homogeneous
    // ideals are graded, so no margin is needed there.
    let margin = if homogeneous { 0 } else { max_rel_len + 2 };

    fn intern_path(
        quiver: &Quiver,
        table: &mut PathTable,
        source: VertexId,
        arrows: &[ArrowId],
    ) -> PathId {
        let target = arrows
            .last()
            .map(|&a| quiver.arrows[a].to)
            .unwrap_or(source);
        table.intern(
            PathKey {
                source,
                arrows: arrows.to_vec(),
            },
            target,
        )
    }

    // Relation rows enter the queue keyed by their longest term.
    let mut queue: Vec<(usize, PathVec)> = Vec::new();
    for rel in relations {
        let mut row: PathVec = Vec::new();
        let mut max_len = 0;
        for (c, arrows) in &rel.terms {
            let id = intern_path(quiver, &mut table, rel.source, arrows);
            max_len = max_len.max(arrows.len());
            pv_add_scaled(&mut row, &vec![(id, c.clone())], &Rat::one());
        }
        if !row.is_empty() {
            queue.push((max_len, row));
        }
    }

    let mut rref_rows: Vec<PathVec> = Vec::new();
    let mut pivot_lookup: HashMap<PathId, usize> = HashMap::new();

    let mut stable_at: Option<usize> = None;
    let mut level = 0usize;
    while level < cap {
        level += 1;
        // Intern the paths of this length.
        let prev = level_paths[level - 1].clone();
        let mut cur = Vec::new();
        for &p in &prev {
            let key = table.keys[p].clone();
            let t = table.targets[p];
            for &a in &out_arrows[t] {
                let mut arrows = key.arrows.clone();
                arrows.push(a);
                let id = intern_path(quiver, &mut table, key.source, &arrows);
                if table.keys.len() > PATH_COUNT_CAP {
                    return Err(Error::CapExceeded(format!(
                        "more than {PATH_COUNT_CAP} paths interned at length {level}; \
                         the algebra is very likely infinite-dimensional"
                    )));
                }
                cur.push(id);
            }
        }
        cur.sort_unstable();
        cur.dedup();
        level_paths.push(cur);

        // Process queued ideal rows that now fit.
        let mut to_process: Vec<PathVec> = Vec::new();
        queue.retain(|(max_len, row)| {
            if *max_len <= level {
                to_process.push(row.clone());
                false
            } else {
                true
            }
        });
        while let Some(mut row) = to_process.pop() {
            pv_reduce(&rref_rows, &pivot_lookup, &mut row);
            if row.is_empty() {
                continue;
            }
            let lead = pv_leading(&table, &row).unwrap();
            let lc = row.iter().find(|(p, _)| *p == lead).unwrap().1.clone();
            let inv = lc.inv();
            for (_, c) in row.iter_mut() {
                *c *= &inv;
            }
            // Gauss-Jordan: clear the new pivot from older rows.
            for r in 0..rref_rows.len() {
                if let Some(c) = rref_rows[r]
                    .iter()
                    .find(|(p, _)| *p == lead)
                    .map(|(_, c)| c.clone())
                {
                    let src = row.clone();
                    pv_add_scaled(&mut rref_rows[r], &src, &-&c);
                }
            }
            pivot_lookup.insert(lead, rref_rows.len());
            rref_rows.push(row.clone());
            if rref_rows.len() > ROW_COUNT_CAP {
                return Err(Error::CapExceeded(format!(
                    "ideal reduction exceeded {ROW_COUNT_CAP} rows"
                )));
            }

            // Arrow multiples of the new independent row generate the rest
            // of the ideal; multiples of dependent rows are combinations of
            // multiples of these.
            let row_source = table.keys[row[0].0].source;
            let row_target = table.targets[row[0].0];
            for &a in &out_arrows[row_target].clone() {
                let mut prod: PathVec = Vec::new();
                let mut max_len = 0;
                for (p, c) in &row {
                    let key = table.keys[*p].clone();
                    let mut arrows = key.arrows.clone();
                    arrows.push(a);
                    max_len = max_len.max(arrows.len());
                    let id = intern_path(quiver, &mut table, key.source, &arrows);
                    pv_add_scaled(&mut prod, &vec![(id, c.clone())], &Rat::one());
                }
                if !prod.is_empty() && max_len <= cap {
                    if max_len <= level {
                        to_process.push(prod);
                    } else {
                        queue.push((max_len, prod));
                    }
                }
            }
            for ai in 0..quiver.arrows.len() {
                if quiver.arrows[ai].to != row_source {
                    continue;
                }
                let from = quiver.arrows[ai].from;
                let mut prod: PathVec = Vec::new();
                let mut max_len = 0;
                for (p, c) in &row {
                    let key = table.keys[*p].clone();
                    let mut arrows = vec![ai];
                    arrows.extend_from_slice(&key.arrows);
                    max_len = max_len.max(arrows.len());
                    let id = intern_path(quiver, &mut table, from, &arrows);
                    pv_add_scaled(&mut prod, &vec![(id, c.clone())], &Rat::one());
                }
                if !prod.is_empty() && max_len <= cap {
                    if max_len <= level {
                        to_process.push(prod);
                    } else {
                        queue.push((max_len, prod));
                    }
                }
            }
        }

        // Stabilized when every path of this length reduces to strictly
        // shorter paths (is a pivot column).
        let all_reduce = level_paths[level]
            .iter()
            .all(|p| pivot_lookup.contains_key(p));
        if all_reduce {
            match stable_at {
                None => {
                    stable_at = Some(level - 1);
                    if margin == 0 {
                        break;
                    }
                }
                Some(s) if level >= s + 1 + margin => break,
                Some(_) => {}
            }
        } else if stable_at.is_some() {
            stable_at = None;
        }
    }

    let Some(stable_at) = stable_at else {
        return Err(Error::CapExceeded(format!(
            "path reduction did not stabilize at length {cap}; \
             the algebra may be infinite-dimensional (raise the length cap to retry)"
        )));
    };

    let mut basis: Vec<PathId> = (0..table.keys.len())
        .filter(|&p| table.len_of(p) <= stable_at && !pivot_lookup.contains_key(&p))
        .collect();
    basis.sort_by_key(|&p| (table.len_of(p), p));
    let basis_index: HashMap<PathId, usize> =
        basis.iter().enumerate().map(|(i, &p)| (p, i)).collect();

    // Normal forms for every interned path of length <= stable_at + 1.
    let mut nf: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); table.keys.len()];
    for p in 0..table.keys.len() {
        if table.len_of(p) > stable_at + 1 {
            continue;
        }
        if let Some(&bi) = basis_index.get(&p) {
            nf[p] = vec![(bi, Rat::one())];
        } else if let Some(&r) = pivot_lookup.get(&p) {
            let mut out = Vec::new();
            for (q, c) in &rref_rows[r] {
                if *q == p {
                    continue;
                }
                let bi = basis_index.get(q).copied().ok_or_else(|| {
                    Error::CapExceeded("internal: ideal row not fully reduced".into())
                })?;
                out.push((bi, -c));
            }
            out.sort_by_key(|(bi, _)| *bi);
            nf[p] = out;
        } else {
            // A free column longer than the stable level contradicts the
            // stabilization certificate.
            return Err(Error::CapExceeded(
                "internal: reduction certificate violated".into(),
            ));
        }
    }

    Ok(PathBasisData {
        table,
        basis,
        basis_index,
        nf,
        stable_at,
    })
}

// ---------------------------------------------------------------------------
// Algebra
// ---------------------------------------------------------------------------

/// A linear combination over the algebra's path basis, sorted by basis index.
pub type AlgElem = Vec<(usize, Rat)>;

pub fn elem_add_scaled(dst: &mut AlgElem, src: &AlgElem, c: &Rat) {
    pv_add_scaled(dst, src, c)
}

pub struct AlgebraData {
    quiver: Quiver,
    relations: Vec<Relation>,
    max_path_length: usize,
    basis: PathBasisData,
    /// `right_mult[b][a]`: normal form of (basis path b)·(arrow a); `None`
    /// when not composable.
    right_mult: Vec<Vec<Option<AlgElem>>>,
    /// `left_mult[b][a]`: normal form of (arrow a)·(basis path b).
    left_mult: Vec<Vec<Option<AlgElem>>>,
    /// Basis indices grouped as `[from][to] -> sorted basis indices`.
    paths_between: Vec<Vec<Vec<usize>>>,
    radical: OnceLock<Vec<Vec<Rat>>>,
    opposite: OnceLock<Algebra>,
}

/// Shared handle to a fully constructed bound quiver algebra.
#[derive(Clone)]
pub struct Algebra(Arc<AlgebraData>);

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Algebra(dim {}, {} vertices, {} arrows, {} relations)",
            self.dim(),
            self.quiver().vertex_count(),
            self.quiver().arrow_count(),
            self.relations().len()
        )
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.quiver() == other.quiver() && self.relations() == other.relations())
    }
}

impl Eq for Algebra {}

impl Algebra {
    pub fn new(quiver: Quiver, relations: Vec<Relation>, max_path_length: usize) -> Result<Self> {
        let basis = compute_path_basis(&quiver, &relations, max_path_length)?;
        let nv = quiver.vertex_count();
        let na = quiver.arrow_count();
        let dim = basis.basis.len();

        let mut right_mult = vec![vec![None; na]; dim];
        let mut left_mult = vec![vec![None; na]; dim];
        let mut paths_between = vec![vec![Vec::new(); nv]; nv];

        for (bi, &p) in basis.basis.iter().enumerate() {
            let key = basis.table.keys[p].clone();
            let target = basis.table.targets[p];
            paths_between[key.source][target].push(bi);
            for (a, arr) in quiver.arrows.iter().enumerate() {
                if arr.from == target {
                    let mut arrows = key.arrows.clone();
                    arrows.push(a);
                    let pk = PathKey {
                        source: key.source,
                        arrows,
                    };
                    let id = basis.table.index[&pk];
                    right_mult[bi][a] = Some(basis.nf[id].clone());
                }
                if arr.to == key.source {
                    let mut arrows = vec![a];
                    arrows.extend_from_slice(&key.arrows);
                    let pk = PathKey {
                        source: arr.from,
                        arrows,
                    };
                    let id = basis.table.index[&pk];
                    left_mult[bi][a] = Some(basis.nf[id].clone());
                }
            }
        }

        Ok(Algebra(Arc::new(AlgebraData {
            quiver,
            relations,
            max_path_length,
            basis,
            right_mult,
            left_mult,
            paths_between,
            radical: OnceLock::new(),
            opposite: OnceLock::new(),
        })))
    }

    pub fn quiver(&self) -> &Quiver {
        &self.0.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.0.relations
    }

    pub fn max_path_length(&self) -> usize {
        self.0.max_path_length
    }

    pub fn dim(&self) -> usize {
        self.0.basis.basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.0.quiver.vertex_count()
    }

    /// Basis index of the trivial path at `v`; trivial paths are interned
    /// first and never reduce away.
    pub fn trivial_basis_index(&self, v: VertexId) -> usize {
        debug_assert_eq!(self.0.basis.basis[v], v);
        v
    }

    /// (source, target, length) of basis path `bi`.
    pub fn basis_path_info(&self, bi: usize) -> (VertexId, VertexId, usize) {
        let p = self.0.basis.basis[bi];
        let key = &self.0.basis.table.keys[p];
        (key.source, self.0.basis.table.targets[p], key.arrows.len())
    }

    pub fn basis_path_arrows(&self, bi: usize) -> &[ArrowId] {
        let p = self.0.basis.basis[bi];
        &self.0.basis.table.keys[p].arrows
    }

    /// Sorted basis indices of residue paths from `from` to `to`.
    pub fn basis_paths_between(&self, from: VertexId, to: VertexId) -> &[usize] {
        &self.0.paths_between[from][to]
    }

    /// Normal form of (basis element `bi`)·(arrow `a`); `None` if not composable.
    pub fn right_mult(&self, bi: usize, a: ArrowId) -> Option<&AlgElem> {
        self.0.right_mult[bi][a].as_ref()
    }

    /// Normal form of (arrow `a`)·(basis element `bi`); `None` if not composable.
    pub fn left_mult(&self, bi: usize, a: ArrowId) -> Option<&AlgElem> {
        self.0.left_mult[bi][a].as_ref()
    }

    /// Product of two basis elements (zero when endpoints do not match).
    pub fn multiply_basis(&self, i: usize, j: usize) -> AlgElem {
        let (_, ti, _) = self.basis_path_info(i);
        let (sj, _, _) = self.basis_path_info(j);
        if ti != sj {
            return Vec::new();
        }
        let arrows: Vec<ArrowId> = self.basis_path_arrows(j).to_vec();
        let mut acc: AlgElem = vec![(i, Rat::one())];
        for a in arrows {
            let mut next: AlgElem = Vec::new();
            for (bi, c) in &acc {
                if let Some(nf) = self.right_mult(*bi, a) {
                    elem_add_scaled(&mut next, nf, c);
                }
            }
            acc = next;
            if acc.is_empty() {
                break;
            }
        }
        acc
    }

    /// Product of two algebra elements.
    pub fn multiply(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        let mut out: AlgElem = Vec::new();
        for (i, ci) in x {
            for (j, cj) in y {
                let prod = self.multiply_basis(*i, *j);
                elem_add_scaled(&mut out, &prod, &(ci * cj));
            }
        }
        out
    }

    /// Jacobson radical as a list of basis-coordinate vectors: the radical
    /// of the trace form of the regular representation, which equals the
    /// Jacobson radical in characteristic zero.
    pub fn radical(&self) -> &Vec<Vec<Rat>> {
        self.0.radical.get_or_init(|| {
            let n = self.dim();
            let mut tr_l = vec![Rat::zero(); n];
            for m in 0..n {
                let mut t = Rat::zero();
                for k in 0..n {
                    let prod = self.multiply_basis(m, k);
                    if let Some((_, c)) = prod.iter().find(|(idx, _)| *idx == k) {
                        t += c;
                    }
                }
                tr_l[m] = t;
            }
            let mut gram = Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let prod = self.multiply_basis(i, j);
                    let mut t = Rat::zero();
                    for (m, c) in &prod {
                        if !tr_l[*m].is_zero() {
                            t += &(c * &tr_l[*m]);
                        }
                    }
                    gram[(i, j)] = t;
                }
            }
            gram.kernel_basis()
        })
    }

    pub fn radical_dim(&self) -> usize {
        self.radical().len()
    }

    /// The opposite algebra: arrows reversed, relation paths reversed.
    pub fn opposite(&self) -> Algebra {
        self.0
            .opposite
            .get_or_init(|| {
                let q = self.0.quiver.reversed();
                let rels = self.0.relations.iter().map(Relation::reversed).collect();
                Algebra::new(q, rels, self.0.max_path_length)
                    .expect("opposite of a finite-dimensional algebra is finite-dimensional")
            })
            .clone()
    }

    /// Human-readable name of a basis path, e.g. `e_2` or `g*b`.
    pub fn basis_path_name(&self, bi: usize) -> String {
        let (s, _, len) = self.basis_path_info(bi);
        if len == 0 {
            format!("e_{}", self.0.quiver.vertex_name(s))
        } else {
            self.basis_path_arrows(bi)
                .iter()
                .map(|&a| self.0.quiver.arrow(a).name.clone())
                .collect::<Vec<_>>()
                .join("*")
        }
    }

    /// Recomputes the level-by-level reduction with cap `l` and reports the
    /// spanning paths plus the reduction of every path one level deeper.
    pub fn path_basis_up_to(&self, l: usize) -> Result<PathBasisReport> {
        if l == 0 {
            return Err(Error::Syntax("path length bound must be >= 1".into()));
        }
        let data = compute_path_basis(&self.0.quiver, &self.0.relations, l)?;
        let name_of = |p: PathId| -> (String, Vec<String>) {
            let key = &data.table.keys[p];
            (
                self.0.quiver.vertex_name(key.source).to_string(),
                key.arrows
                    .iter()
                    .map(|&a| self.0.quiver.arrow(a).name.clone())
                    .collect(),
            )
        };
        let basis = data.basis.iter().map(|&p| name_of(p)).collect();
        let mut reductions = Vec::new();
        for p in 0..data.table.keys.len() {
            if data.table.len_of(p) != data.stable_at + 1 {
                continue;
            }
            let (_, path) = name_of(p);
            let normal_form = data.nf[p]
                .iter()
                .map(|(bi, c)| {
                    let (_, names) = name_of(data.basis[*bi]);
                    (c.clone(), names)
                })
                .collect();
            reductions.push(Reduction { path, normal_form });
        }
        Ok(PathBasisReport {
            basis,
            stable_at: data.stable_at,
            reductions,
        })
    }

    /// Stable content fingerprint of the presentation, used by the universe
    /// cache. FNV-1a over a canonical rendering.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        let mut eat = |s: &str| {
            for b in s.bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        };
        for v in self.0.quiver.vertex_names() {
            eat(v);
            eat(";");
        }
        for a in self.0.quiver.arrows() {
            eat(&a.name);
            eat(self.0.quiver.vertex_name(a.from));
            eat(self.0.quiver.vertex_name(a.to));
            eat(";");
        }
        for r in &self.0.relations {
            for (c, p) in &r.terms {
                eat(&c.to_string());
                for &a in p {
                    eat(&self.0.quiver.arrow(a).name);
                }
                eat(",");
            }
            eat(";");
        }
        h
    }
}

/// One entry in the reduction table returned by [`Algebra::path_basis_up_to`].
#[derive(Debug, Clone)]
pub struct Reduction {
    pub path: Vec<String>,
    pub normal_form: Vec<(Rat, Vec<String>)>,
}

#[derive(Debug, Clone)]
pub struct PathBasisReport {
    /// Basis paths as (source vertex name, arrow names); trivial paths have
    /// an empty arrow list.
    pub basis: Vec<(String, Vec<String>)>,
    /// Level at which the reduction stabilized.
    pub stable_at: usize,
    /// Linear reduction of every path one longer than the stable level.
    pub reductions: Vec<Reduction>,
}

// ---------------------------------------------------------------------------
// JSON input schema
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct ArrowSpec {
    name: String,
    from: String,
    to: String,
}

#[derive(Deserialize)]
struct RelationTermSpec {
    coef: Rat,
    path: Vec<String>,
}

#[derive(Deserialize)]
struct AlgebraSpec {
    vertices: Vec<String>,
    #[serde(default)]
    arrows: Vec<ArrowSpec>,
    #[serde(default)]
    relations: Vec<Vec<RelationTermSpec>>,
    #[serde(default, rename = "maxPathLength")]
    max_path_length: Option<usize>,
}

impl Algebra {
    /// Parses and validates the algebra JSON document.
    pub fn parse_json(text: &str) -> Result<Algebra> {
        let spec: AlgebraSpec =
            serde_json::from_str(text).map_err(|e| Error::Syntax(format!("algebra JSON: {e}")))?;
        Self::from_spec(spec)
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Algebra> {
        let spec: AlgebraSpec = serde_json::from_value(v.clone())
            .map_err(|e| Error::Syntax(format!("algebra JSON: {e}")))?;
        Self::from_spec(spec)
    }

    fn from_spec(spec: AlgebraSpec) -> Result<Algebra> {
        let quiver = Quiver::new(
            spec.vertices,
            spec.arrows
                .into_iter()
                .map(|a| (a.name, a.from, a.to))
                .collect(),
        )?;
        let mut relations = Vec::new();
        for rel in spec.relations {
            let terms: Vec<(Rat, Vec<String>)> =
                rel.into_iter().map(|t| (t.coef, t.path)).collect();
            relations.push(Relation::new(&quiver, terms)?);
        }
        Algebra::new(
            quiver,
            relations,
            spec.max_path_length.unwrap_or(DEFAULT_MAX_PATH_LENGTH),
        )
    }

    /// Canonical JSON rendering of the presentation.
    pub fn to_json(&self) -> serde_json::Value {
        let q = self.quiver();
        serde_json::json!({
            "vertices": q.vertex_names(),
            "arrows": q.arrows().iter().map(|a| serde_json::json!({
                "name": a.name,
                "from": q.vertex_name(a.from),
                "to": q.vertex_name(a.to),
            })).collect::<Vec<_>>(),
            "relations": self.relations().iter().map(|r| {
                r.terms.iter().map(|(c, p)| serde_json::json!({
                    "coef": c.to_string(),
                    "path": p.iter().map(|&a| q.arrow(a).name.clone()).collect::<Vec<_>>(),
                })).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "maxPathLength": self.max_path_length(),
        })
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rat::Rat;

    pub(crate) fn a3() -> Algebra {
        // 1 <-a- 2 <-b- 3, no relations
        let q = Quiver::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                ("a".into(), "2".into(), "1".into()),
                ("b".into(), "3".into(), "2".into()),
            ],
        )
        .unwrap();
        Algebra::new(q, vec![], 64).unwrap()
    }

    pub(crate) fn g8() -> Algebra {
        // 3 -a-> 1 <-b- 2 <-g- 4, relation g then b
        let q = Quiver::new(
            vec!["1".into(), "2".into(), "3".into(), "4".into()],
            vec![
                ("a".into(), "3".into(), "1".into()),
                ("b".into(), "2".into(), "1".into()),
                ("g".into(), "4".into(), "2".into()),
            ],
        )
        .unwrap();
        let rel = Relation::new(&q, vec![(Rat::one(), vec!["g".into(), "b".into()])]).unwrap();
        Algebra::new(q, vec![rel], 64).unwrap()
    }

    #[test]
    fn a3_has_six_basis_paths() {
        // Oracle: directed paths of linear A3 counted by hand: 3 trivial +
        // a + b + ba = 6.
        let alg = a3();
        assert_eq!(alg.dim(), 6);
        assert_eq!(alg.radical_dim(), 3);
    }

    #[test]
    fn g8_relation_kills_length_two_path() {
        // 4 trivial + a + b + g = 7; the composite g*b dies.
        let alg = g8();
        assert_eq!(alg.dim(), 7);
        let v4 = alg.quiver().vertex_id("4").unwrap();
        let v1 = alg.quiver().vertex_id("1").unwrap();
        assert!(alg.basis_paths_between(v4, v1).is_empty());
    }

    #[test]
    fn unknown_arrow_in_relation() {
        let q = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![("a".into(), "2".into(), "1".into())],
        )
        .unwrap();
        let err = Relation::new(&q, vec![(Rat::one(), vec!["d".into()])]).unwrap_err();
        assert!(matches!(err, Error::UnknownArrow(n) if n == "d"));
    }

    #[test]
    fn loop_without_relations_is_infinite_dimensional() {
        let q = Quiver::new(
            vec!["1".into()],
            vec![("c".into(), "1".into(), "1".into())],
        )
        .unwrap();
        let err = Algebra::new(q, vec![], 16).unwrap_err();
        assert!(matches!(err, Error::CapExceeded(_)));
    }

    #[test]
    fn loop_with_nilpotency_relation_is_finite() {
        let q = Quiver::new(
            vec!["1".into()],
            vec![("c".into(), "1".into(), "1".into())],
        )
        .unwrap();
        let rel = Relation::new(
            &q,
            vec![(Rat::one(), vec!["c".into(), "c".into(), "c".into()])],
        )
        .unwrap();
        let alg = Algebra::new(q, vec![rel], 16).unwrap();
        // k[c]/(c^3): basis e, c, c^2
        assert_eq!(alg.dim(), 3);
        assert_eq!(alg.radical_dim(), 2);
    }

    #[test]
    fn opposite_preserves_dimension_and_is_involutive() {
        for alg in [a3(), g8()] {
            let op = alg.opposite();
            assert_eq!(op.dim(), alg.dim());
            let opop = op.opposite();
            assert_eq!(opop, alg);
        }
        let op = a3().opposite();
        let arr = &op.quiver().arrows()[0];
        assert_eq!(op.quiver().vertex_name(arr.from), "1");
        assert_eq!(op.quiver().vertex_name(arr.to), "2");
    }

    #[test]
    fn basis_products_stay_in_span() {
        for alg in [a3(), g8()] {
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    let prod = alg.multiply_basis(i, j);
                    for (bi, _) in prod {
                        assert!(bi < alg.dim());
                    }
                }
            }
        }
    }

    #[test]
    fn multiplication_is_associative_on_samples() {
        let alg = g8();
        let n = alg.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ij = alg.multiply_basis(i, j);
                    let jk = alg.multiply_basis(j, k);
                    let left = alg.multiply(&ij, &vec![(k, Rat::one())]);
                    let right = alg.multiply(&vec![(i, Rat::one())], &jk);
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn path_basis_report_terminates() {
        let alg = a3();
        let report = alg.path_basis_up_to(3).unwrap();
        assert_eq!(report.basis.len(), 6);
        assert_eq!(report.stable_at, 2);
        let alg = g8();
        let report = alg.path_basis_up_to(3).unwrap();
        assert_eq!(report.basis.len(), 7);
    }

    #[test]
    fn parse_json_schema() {
        let text = r#"{
            "vertices": ["1","2"],
            "arrows": [{"name":"a","from":"2","to":"1"}],
            "relations": []
        }"#;
        let alg = Algebra::parse_json(text).unwrap();
        assert_eq!(alg.dim(), 3);
        let bad = r#"{"vertices": ["1"], "arrows": [{"name":"a","from":"1","to":"9"}]}"#;
        assert!(matches!(
            Algebra::parse_json(bad),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn acyclic_dim_equals_dfs_path_count() {
        // Independent oracle: count directed paths (including trivial) by DFS.
        fn dfs_count(q: &Quiver) -> usize {
            fn go(q: &Quiver, v: VertexId) -> usize {
                let mut n = 1;
                for a in q.arrows() {
                    if a.from == v {
                        n += go(q, a.to);
                    }
                }
                n
            }
            (0..q.vertex_count()).map(|v| go(q, v)).sum()
        }
        let q = Quiver::new(
            vec!["1".into(), "2".into(), "3".into(), "4".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "3".into()),
                ("c".into(), "2".into(), "4".into()),
                ("d".into(), "1".into(), "3".into()),
            ],
        )
        .unwrap();
        let expected = dfs_count(&q);
        let alg = Algebra::new(q, vec![], 64).unwrap();
        assert_eq!(alg.dim(), expected);
    }
}
