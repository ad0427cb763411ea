//! Burnside-ring variants for groups known only through finite data.
//!
//! * Finite-quotient version: profiles of finite G-sets that factor through a
//!   declared finite quotient `Q`, tested with the congruences of `A(Q)`.
//! * Inverse-limit version: the limit of `A(H)` over a finite diagram of
//!   finite subgroups and conjugation maps, computed as an integer kernel.
//! * Covariant version: integer combinations of conjugacy classes of finite
//!   subgroups, their L²-characters from declarative fusion data, the
//!   integrality relations, and the pairings between the versions.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::burnside::{BurnsideElement, BurnsideError, BurnsideRing, ElementRecord, GhostVector};
use crate::groupkit::{
    build_group, euler_phi, subgroup_as_group, FiniteGroup, GroupError, GroupHom, GroupSpec, Subgroup,
};
use crate::zlinalg::{
    self, int_vec, lattice_contains, solve_unitriangular_rational, IntMatrix, LinalgError, RatMatrix,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InfiniteError {
    #[error("invalid diagram: {0}")]
    BadDiagram(String),
    #[error("morphism {0} is not injective")]
    NotInjective(usize),
    #[error("label maps are not functorial along morphism {morphism} at class {class}")]
    NotFunctorial { morphism: usize, class: String },
    #[error("label {0} is not assigned to any class")]
    UnhitLabel(String),
    #[error("no value or assignment for label {0}")]
    MissingLabel(String),
    #[error("no finite quotient declared")]
    MissingQuotient,
    #[error("fusion data has no entry for the pair ({0}),({1})")]
    MissingFusionEntry(String, String),
    #[error("support is not closed under subconjugacy: ({missing}) lies below ({label})")]
    SupportNotClosed { label: String, missing: String },
    #[error("diagonal L²-character at ({label}) is {value}, expected 1")]
    NonUnitDiagonal { label: String, value: String },
    #[error("invalid fusion data: {0}")]
    BadFusion(String),
    #[error("label {0} is not realized by any diagram object")]
    UnreachableLabel(String),
    #[error("realizations of label {0} give different values")]
    InconsistentRealization(String),
    #[error("no homomorphism to the quotient for an object realizing {0}")]
    MissingHomomorphism(String),
    #[error("components are not compatible along morphism {0}")]
    IncompatibleComponents(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Burnside(#[from] BurnsideError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

// ---------------------------------------------------------------------------
// Finite-quotient version

/// Fixed-point profile `x(m) = |S^{mℤ}|` of `S = ⊔ c_n·ℤ/n`, and the divisor
/// congruences `Σ_{m|n} φ(n/m)·x(m) ≡ 0 mod n` for every `n ≤ bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZProfile {
    /// `values[m-1] = x(m)`
    #[serde(with = "int_vec")]
    pub values: Vec<BigInt>,
    pub congruences: Vec<ZCongruence>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZCongruence {
    pub n: usize,
    #[serde(serialize_with = "ser_int")]
    pub residue: BigInt,
}

impl ZProfile {
    pub fn accepted(&self) -> bool {
        self.congruences.iter().all(|c| c.residue.is_zero())
    }
}

fn ser_int<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    int_vec::to_json(v).serialize(s)
}

pub fn finset_z_profile(coeffs: &BTreeMap<usize, BigInt>, bound: usize) -> ZProfile {
    let values: Vec<BigInt> = (1..=bound)
        .map(|m| coeffs.iter().filter(|(&n, _)| n >= 1 && m % n == 0).map(|(&n, c)| c * BigInt::from(n)).sum())
        .collect();
    let congruences = z_congruences(&values);
    ZProfile { values, congruences }
}

/// Divisor congruences of an arbitrary profile `values[m-1] = x(m)`.
pub fn z_congruences(values: &[BigInt]) -> Vec<ZCongruence> {
    (1..=values.len())
        .map(|n| {
            let sum: BigInt =
                (1..=n).filter(|m| n % m == 0).map(|m| BigInt::from(euler_phi(n / m)) * &values[m - 1]).sum();
            ZCongruence { n, residue: sum.mod_floor(&BigInt::from(n)) }
        })
        .collect()
}

/// A finite G-set factoring through a finite quotient `Q`, with maps from
/// diagram objects to `Q` (the composites `H ⊆ G ↠ Q`).
#[derive(Clone, Debug)]
pub struct FinsetElement {
    pub quotient: Arc<BurnsideRing>,
    pub element: BurnsideElement,
    pub homs: BTreeMap<usize, GroupHom>,
}

impl FinsetElement {
    pub fn from_record(rec: &FinsetRecord, diagram: Option<&SubFinDiagram>, cap: usize) -> Result<Self, InfiniteError> {
        let q = Arc::new(build_group(&rec.quotient, cap)?);
        let ring = Arc::new(BurnsideRing::new(&q));
        let element = ring.from_record(&rec.element)?;
        let mut homs = BTreeMap::new();
        for (key, images) in &rec.homs {
            let obj: usize = key.parse().map_err(|_| InfiniteError::BadDiagram(format!("object key {key:?}")))?;
            let d = diagram.ok_or_else(|| InfiniteError::BadDiagram("homomorphisms need a diagram".into()))?;
            let source = d.objects.get(obj).ok_or_else(|| InfiniteError::BadDiagram(format!("no object {obj}")))?;
            homs.insert(obj, GroupHom::new(Arc::clone(source), Arc::clone(&q), images.clone())?);
        }
        Ok(FinsetElement { quotient: ring, element, homs })
    }

    /// The one-point G-set.
    pub fn unit(quotient: Arc<BurnsideRing>, homs: BTreeMap<usize, GroupHom>) -> Self {
        let element = quotient.one();
        FinsetElement { quotient, element, homs }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FinsetRecord {
    pub quotient: GroupSpec,
    pub element: ElementRecord,
    #[serde(default)]
    pub homs: BTreeMap<String, Vec<usize>>,
}

/// Membership of a profile on the subgroup classes of a declared finite
/// quotient, keyed by class label.
pub fn finset_membership(
    quotient: Option<&BurnsideRing>,
    profile: &BTreeMap<String, BigInt>,
) -> Result<bool, InfiniteError> {
    let ring = quotient.ok_or(InfiniteError::MissingQuotient)?;
    let values = ring
        .ccs()
        .labels()
        .into_iter()
        .map(|l| profile.get(&l).cloned().ok_or(InfiniteError::MissingLabel(l)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ring.is_in_ghost_image(&GhostVector { values }))
}

/// Pulls a ghost vector on `Q` back along a surjection `Q' ↠ Q`:
/// the value at `L ⊆ Q'` is the value at its image.
pub fn pullback_profile(proj: &GroupHom, upper: &BurnsideRing, lower: &BurnsideRing, v: &GhostVector) -> GhostVector {
    let values = upper
        .ccs()
        .classes()
        .iter()
        .map(|c| {
            let image = proj.image_of(&c.representative);
            v.values[lower.ccs().class_of(&image).expect("image is a subgroup")].clone()
        })
        .collect();
    GhostVector { values }
}

// ---------------------------------------------------------------------------
// Diagrams of finite subgroups

#[derive(Clone, Debug)]
pub struct DiagramMorphism {
    pub from: usize,
    pub to: usize,
    pub hom: GroupHom,
}

/// Finite subgroups of an ambient group with injective conjugation maps,
/// closed under composition and containing all identities.
#[derive(Clone, Debug)]
pub struct SubFinDiagram {
    objects: Vec<Arc<FiniteGroup>>,
    rings: Vec<Arc<BurnsideRing>>,
    morphisms: Vec<DiagramMorphism>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorphismRecord {
    pub from: usize,
    pub to: usize,
    pub images: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiagramRecord {
    pub objects: Vec<GroupSpec>,
    #[serde(default)]
    pub morphisms: Vec<MorphismRecord>,
}

impl SubFinDiagram {
    pub fn from_record(rec: &DiagramRecord, cap: usize) -> Result<Self, InfiniteError> {
        let objects = rec.objects.iter().map(|s| build_group(s, cap).map(Arc::new)).collect::<Result<Vec<_>, _>>()?;
        let mut list = Vec::new();
        for (k, m) in rec.morphisms.iter().enumerate() {
            if m.from >= objects.len() || m.to >= objects.len() {
                return Err(InfiniteError::BadDiagram(format!("morphism {k} refers to a missing object")));
            }
            let hom = GroupHom::new(Arc::clone(&objects[m.from]), Arc::clone(&objects[m.to]), m.images.clone())?;
            list.push((m.from, m.to, hom));
        }
        Self::new(objects, list)
    }

    /// Validates injectivity and closes under composition and identities.
    pub fn new(
        objects: Vec<Arc<FiniteGroup>>,
        morphisms: Vec<(usize, usize, GroupHom)>,
    ) -> Result<Self, InfiniteError> {
        let mut seen: HashSet<(usize, usize, Vec<usize>)> = HashSet::new();
        let mut list: Vec<DiagramMorphism> = Vec::new();
        let mut push = |list: &mut Vec<DiagramMorphism>, from: usize, to: usize, hom: GroupHom| {
            if seen.insert((from, to, hom.images().to_vec())) {
                list.push(DiagramMorphism { from, to, hom });
            }
        };
        for (i, o) in objects.iter().enumerate() {
            push(&mut list, i, i, GroupHom::identity(o));
        }
        for (k, (from, to, hom)) in morphisms.into_iter().enumerate() {
            if !hom.is_injective() {
                return Err(InfiniteError::NotInjective(k));
            }
            push(&mut list, from, to, hom);
        }
        let mut start = 0;
        loop {
            let before = list.len();
            let mut fresh = Vec::new();
            for a in 0..before {
                for b in 0..before {
                    if a < start && b < start {
                        continue;
                    }
                    let (u, v) = (&list[a], &list[b]);
                    if u.to == v.from {
                        fresh.push((u.from, v.to, u.hom.then(&v.hom)?));
                    }
                }
            }
            for (from, to, hom) in fresh {
                push(&mut list, from, to, hom);
            }
            if list.len() == before {
                break;
            }
            start = before;
        }
        let rings = objects.iter().map(|o| Arc::new(BurnsideRing::new(o))).collect();
        Ok(SubFinDiagram { objects, rings, morphisms: list })
    }

    /// `ℤ/p⁰ ↪ ℤ/p ↪ … ↪ ℤ/pⁿ`, each step `i ↦ p·i`.
    pub fn prufer(p: usize, n: usize) -> Self {
        let objects: Vec<Arc<FiniteGroup>> = (0..=n).map(|m| Arc::new(FiniteGroup::cyclic(p.pow(m as u32)))).collect();
        let morphisms = (0..n)
            .map(|m| {
                let images = (0..objects[m].order()).map(|i| i * p).collect();
                (m, m + 1, GroupHom::new(Arc::clone(&objects[m]), Arc::clone(&objects[m + 1]), images).unwrap())
            })
            .collect();
        Self::new(objects, morphisms).expect("inclusions are injective")
    }

    /// Trivial group mapping into each of the given groups.
    pub fn star(arms: &[FiniteGroup]) -> Self {
        let mut objects = vec![Arc::new(FiniteGroup::trivial())];
        objects.extend(arms.iter().cloned().map(Arc::new));
        let morphisms = (1..objects.len())
            .map(|i| {
                let hom = GroupHom::new(Arc::clone(&objects[0]), Arc::clone(&objects[i]), vec![objects[i].identity()])
                    .unwrap();
                (0, i, hom)
            })
            .collect();
        Self::new(objects, morphisms).expect("inclusions are injective")
    }

    /// A finite group as its own diagram: class representatives as objects,
    /// every conjugation map `h ↦ ghg⁻¹` with `gHg⁻¹ ⊆ K` as a morphism.
    /// The whole group is the last object.
    pub fn from_finite_group(ring: &BurnsideRing) -> Self {
        let g = ring.group();
        let reps: Vec<&Subgroup> = ring.ccs().classes().iter().map(|c| &c.representative).collect();
        let objects: Vec<Arc<FiniteGroup>> = reps.iter().map(|h| subgroup_as_group(g, h).0).collect();
        let mut morphisms = Vec::new();
        let mut seen = HashSet::new();
        for (i, h) in reps.iter().enumerate() {
            for (j, k) in reps.iter().enumerate() {
                if h.order() > k.order() || k.order() % h.order() != 0 {
                    continue;
                }
                for x in g.elements() {
                    let images: Option<Vec<usize>> =
                        h.elements().iter().map(|&a| k.elements().binary_search(&g.conj(x, a)).ok()).collect();
                    if let Some(images) = images {
                        if seen.insert((i, j, images.clone())) {
                            let hom = GroupHom::new(Arc::clone(&objects[i]), Arc::clone(&objects[j]), images).unwrap();
                            morphisms.push((i, j, hom));
                        }
                    }
                }
            }
        }
        Self::new(objects, morphisms).expect("conjugations are injective")
    }

    pub fn objects(&self) -> &[Arc<FiniteGroup>] {
        &self.objects
    }

    pub fn rings(&self) -> &[Arc<BurnsideRing>] {
        &self.rings
    }

    pub fn ring(&self, i: usize) -> &BurnsideRing {
        &self.rings[i]
    }

    pub fn morphisms(&self) -> &[DiagramMorphism] {
        &self.morphisms
    }

    /// Offsets of each object's block in concatenated coordinates.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.rings.len() + 1);
        let mut acc = 0;
        for r in &self.rings {
            out.push(acc);
            acc += r.len();
        }
        out.push(acc);
        out
    }

    /// `res_u(x_K)` along a morphism `u: H → K`.
    pub fn restrict(&self, m: &DiagramMorphism, x: &BurnsideElement) -> Result<BurnsideElement, InfiniteError> {
        Ok(self.rings[m.to].restriction(&m.hom, &self.rings[m.from], x)?)
    }

    pub fn to_record(&self) -> DiagramRecord {
        DiagramRecord {
            objects: self
                .objects
                .iter()
                .map(|o| GroupSpec::Cayley { table: o.table_rows(), label: Some(o.label().to_string()) })
                .collect(),
            morphisms: self
                .morphisms
                .iter()
                .filter(|m| m.from != m.to || m.hom.images().iter().enumerate().any(|(i, &x)| i != x))
                .map(|m| MorphismRecord { from: m.from, to: m.to, images: m.hom.images().to_vec() })
                .collect(),
        }
    }
}

/// Basis of the limit lattice in concatenated coordinates `⊕_H A(H)`.
#[derive(Clone, Debug)]
pub struct InverseLimit {
    pub rank: usize,
    pub basis: IntMatrix,
    pub offsets: Vec<usize>,
}

impl InverseLimit {
    /// Component of a concatenated vector in the object `i`.
    pub fn component(&self, v: &[BigInt], i: usize) -> BurnsideElement {
        BurnsideElement { coeffs: v[self.offsets[i]..self.offsets[i + 1]].to_vec() }
    }

    pub fn components(&self, v: &[BigInt]) -> Vec<BurnsideElement> {
        (0..self.offsets.len() - 1).map(|i| self.component(v, i)).collect()
    }

    pub fn concat(parts: &[BurnsideElement]) -> Vec<BigInt> {
        parts.iter().flat_map(|p| p.coeffs.iter().cloned()).collect()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        lattice_contains(&self.basis, v)
    }
}

/// Kernel of `⊕_H A(H) → ⊕_{u: H→K} A(H)`, `x ↦ (x_H − res_u x_K)`.
pub fn inverse_limit(d: &SubFinDiagram) -> Result<InverseLimit, InfiniteError> {
    let offsets = d.offsets();
    let total = *offsets.last().unwrap();
    let mut col_offsets = Vec::with_capacity(d.morphisms.len() + 1);
    let mut acc = 0;
    for m in &d.morphisms {
        col_offsets.push(acc);
        acc += d.rings[m.from].len();
    }
    let mut mat = IntMatrix::zeros(total, acc);
    for (k, m) in d.morphisms.iter().enumerate() {
        let (rh, rk) = (&d.rings[m.from], &d.rings[m.to]);
        let c0 = col_offsets[k];
        for i in 0..rh.len() {
            let cur = mat.get(offsets[m.from] + i, c0 + i).clone();
            mat.set(offsets[m.from] + i, c0 + i, cur + 1);
        }
        for j in 0..rk.len() {
            let res = d.restrict(m, &rk.basis(j))?;
            for (i, c) in res.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    let cur = mat.get(offsets[m.to] + j, c0 + i).clone();
                    mat.set(offsets[m.to] + j, c0 + i, cur - c);
                }
            }
        }
    }
    let basis = zlinalg::integer_kernel(&mat);
    Ok(InverseLimit { rank: basis.rows(), basis, offsets })
}

/// Checks that componentwise products of basis vectors stay in the limit and
/// that the unit (every component `[H/H]`) belongs to it.
pub fn limit_is_subring(d: &SubFinDiagram, lim: &InverseLimit) -> bool {
    let unit = InverseLimit::concat(&d.rings.iter().map(|r| r.one()).collect::<Vec<_>>());
    if !lim.contains(&unit) {
        return false;
    }
    let rows: Vec<Vec<BurnsideElement>> = lim.basis.row_iter().map(|r| lim.components(r)).collect();
    for a in 0..rows.len() {
        for b in a..rows.len() {
            let prod: Vec<BurnsideElement> =
                (0..d.rings.len()).map(|i| d.rings[i].multiply(&rows[a][i], &rows[b][i])).collect();
            if !lim.contains(&InverseLimit::concat(&prod)) {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Labels for conjugacy classes of finite subgroups

/// Labels standing for classes of finite subgroups of the ambient group,
/// with the assignment `ccs(H) → labels` for every diagram object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CcsfStructure {
    pub labels: Vec<String>,
    /// Order of the finite subgroups carrying each label.
    pub orders: Vec<usize>,
    /// `assign[object][class] = label index`
    pub assign: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CcsfRecord {
    pub labels: Vec<String>,
    pub assign: BTreeMap<String, Vec<String>>,
}

impl CcsfStructure {
    pub fn from_record(d: &SubFinDiagram, rec: &CcsfRecord) -> Result<Self, InfiniteError> {
        let index: HashMap<&str, usize> = rec.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut assign = vec![Vec::new(); d.objects.len()];
        for (key, labels) in &rec.assign {
            let obj: usize = key.parse().map_err(|_| InfiniteError::BadDiagram(format!("object key {key:?}")))?;
            if obj >= d.objects.len() {
                return Err(InfiniteError::BadDiagram(format!("no object {obj}")));
            }
            if labels.len() != d.rings[obj].len() {
                return Err(InfiniteError::BadDiagram(format!(
                    "object {obj} has {} classes, {} labels given",
                    d.rings[obj].len(),
                    labels.len()
                )));
            }
            assign[obj] = labels
                .iter()
                .map(|l| index.get(l.as_str()).copied().ok_or_else(|| InfiniteError::MissingLabel(l.clone())))
                .collect::<Result<_, _>>()?;
        }
        for (obj, a) in assign.iter().enumerate() {
            if a.is_empty() {
                return Err(InfiniteError::MissingLabel(format!("assignment for object {obj}")));
            }
        }
        let mut orders = vec![0; rec.labels.len()];
        for (obj, a) in assign.iter().enumerate() {
            for (c, &l) in a.iter().enumerate() {
                let o = d.rings[obj].ccs().class(c).order();
                if orders[l] != 0 && orders[l] != o {
                    return Err(InfiniteError::BadDiagram(format!("label {} used for several orders", rec.labels[l])));
                }
                orders[l] = o;
            }
        }
        let s = CcsfStructure { labels: rec.labels.clone(), orders, assign };
        s.validate(d)?;
        Ok(s)
    }

    /// Identifies classes along the diagram morphisms; one label per resulting
    /// equivalence class, ordered by subgroup order and first appearance.
    pub fn colimit(d: &SubFinDiagram) -> Self {
        let offsets = d.offsets();
        let total = *offsets.last().unwrap();
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for m in &d.morphisms {
            let (rh, rk) = (&d.rings[m.from], &d.rings[m.to]);
            for c in 0..rh.len() {
                let image = m.hom.image_of(&rh.ccs().class(c).representative);
                let t = rk.ccs().class_of(&image).unwrap();
                let (a, b) = (find(&mut parent, offsets[m.from] + c), find(&mut parent, offsets[m.to] + t));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut roots: Vec<(usize, usize)> = Vec::new();
        for (ring, &start) in d.rings.iter().zip(&offsets) {
            for c in 0..ring.len() {
                let r = find(&mut parent, start + c);
                if !roots.iter().any(|&(x, _)| x == r) {
                    roots.push((r, ring.ccs().class(c).order()));
                }
            }
        }
        roots.sort_by_key(|&(r, o)| (o, r));
        let root_index: HashMap<usize, usize> = roots.iter().enumerate().map(|(i, &(r, _))| (r, i)).collect();
        let mut labels = Vec::new();
        let mut per_order: HashMap<usize, usize> = HashMap::new();
        for &(_, o) in &roots {
            let k = per_order.entry(o).or_insert(0);
            labels.push(format!("{o}:{k}"));
            *k += 1;
        }
        let assign = (0..d.objects.len())
            .map(|obj| (0..d.rings[obj].len()).map(|c| root_index[&find(&mut parent, offsets[obj] + c)]).collect())
            .collect();
        CcsfStructure { labels, orders: roots.iter().map(|&(_, o)| o).collect(), assign }
    }

    /// Functoriality along every morphism, and every label hit.
    pub fn validate(&self, d: &SubFinDiagram) -> Result<(), InfiniteError> {
        for (k, m) in d.morphisms.iter().enumerate() {
            let (rh, rk) = (&d.rings[m.from], &d.rings[m.to]);
            for c in 0..rh.len() {
                let image = m.hom.image_of(&rh.ccs().class(c).representative);
                let t = rk.ccs().class_of(&image).unwrap();
                if self.assign[m.from][c] != self.assign[m.to][t] {
                    return Err(InfiniteError::NotFunctorial { morphism: k, class: rh.ccs().class(c).label.clone() });
                }
            }
        }
        let hit: HashSet<usize> = self.assign.iter().flatten().copied().collect();
        if let Some(l) = (0..self.labels.len()).find(|l| !hit.contains(l)) {
            return Err(InfiniteError::UnhitLabel(self.labels[l].clone()));
        }
        Ok(())
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    pub fn to_record(&self) -> CcsfRecord {
        CcsfRecord {
            labels: self.labels.clone(),
            assign: self
                .assign
                .iter()
                .enumerate()
                .map(|(o, a)| (o.to_string(), a.iter().map(|&l| self.labels[l].clone()).collect()))
                .collect(),
        }
    }

    /// Ordered profile vector from values keyed by label.
    pub fn profile(&self, values: &BTreeMap<String, BigInt>) -> Result<Vec<BigInt>, InfiniteError> {
        self.labels
            .iter()
            .map(|l| values.get(l).cloned().ok_or_else(|| InfiniteError::MissingLabel(l.clone())))
            .collect()
    }

    /// Every (object, class) carrying a label.
    pub fn realizations(&self, label: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (o, a) in self.assign.iter().enumerate() {
            for (c, &l) in a.iter().enumerate() {
                if l == label {
                    out.push((o, c));
                }
            }
        }
        out
    }
}

/// Condition C(K): the profile pulled back to the object `k` lies in the ghost image of `A(K)`.
pub fn condition_c(d: &SubFinDiagram, s: &CcsfStructure, profile: &[BigInt], k: usize) -> Result<bool, InfiniteError> {
    let assign =
        s.assign.get(k).filter(|a| !a.is_empty()).ok_or_else(|| InfiniteError::MissingLabel(format!("object {k}")))?;
    let values = assign
        .iter()
        .map(|&l| profile.get(l).cloned().ok_or_else(|| InfiniteError::MissingLabel(s.labels[l].clone())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(d.rings[k].is_in_ghost_image(&GhostVector { values }))
}

/// Integer profiles `(x(0), …, x(n))` satisfying condition C at every
/// `ℤ/p^m`, `m ≤ n`, as a Hermite basis. Coordinate `k` belongs to the
/// subgroups of order `p^k`.
pub fn prufer_solution_lattice(p: usize, n: usize) -> IntMatrix {
    let mut lattice = IntMatrix::identity(n + 1);
    for m in 0..=n {
        let ring = BurnsideRing::of(FiniteGroup::cyclic(p.pow(m as u32)));
        // ghost image of A(ℤ/p^m) in the first m+1 coordinates, free elsewhere
        let mut rows = Vec::new();
        for r in ring.marks().matrix.row_iter() {
            let mut v = r.to_vec();
            v.resize(n + 1, BigInt::zero());
            rows.push(v);
        }
        for j in m + 1..=n {
            let mut v = vec![BigInt::zero(); n + 1];
            v[j] = BigInt::one();
            rows.push(v);
        }
        let lm = IntMatrix::from_rows(rows, n + 1).unwrap();
        lattice = zlinalg::lattice_intersection(&lattice, &lm).unwrap();
    }
    lattice
}

// ---------------------------------------------------------------------------
// Covariant version

/// Integer combination of labels.
pub type CovariantElement = BTreeMap<String, BigInt>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionLabel {
    pub name: String,
    pub order: usize,
}

/// One class `(L) ∈ 𝓛_K(H)` with `|H ∩ N_G L|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionEntry {
    pub class: String,
    pub normalizer_meet: usize,
}

/// Declarative fusion of finite subgroups: for labels `(K), (H)` the classes
/// of subgroups of `H` that are conjugate to `K` in the ambient group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionData {
    pub labels: Vec<FusionLabel>,
    fusion: HashMap<(usize, usize), Vec<FusionEntry>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FusionLabelRecord {
    pub name: String,
    pub order: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FusionEntryRecord {
    #[serde(rename = "L")]
    pub class: serde_json::Value,
    pub normalizer_meet: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FusionRecord {
    pub labels: Vec<FusionLabelRecord>,
    pub fusion: BTreeMap<String, Vec<FusionEntryRecord>>,
}

fn parse_pair_key(key: &str) -> Option<(&str, &str)> {
    let inner = key.trim().strip_prefix('(')?.strip_suffix(')')?;
    let (k, h) = inner.split_once("),(")?;
    Some((k.trim(), h.trim()))
}

impl FusionData {
    pub fn from_record(rec: &FusionRecord) -> Result<Self, InfiniteError> {
        let labels: Vec<FusionLabel> =
            rec.labels.iter().map(|l| FusionLabel { name: l.name.clone(), order: l.order }).collect();
        let mut names = HashSet::new();
        for l in &labels {
            if l.order == 0 || !names.insert(l.name.as_str()) {
                return Err(InfiniteError::BadFusion(format!("label {:?} is duplicated or has order 0", l.name)));
            }
        }
        let index =
            |n: &str| labels.iter().position(|l| l.name == n).ok_or_else(|| InfiniteError::MissingLabel(n.into()));
        let mut fusion = HashMap::new();
        for (key, entries) in &rec.fusion {
            let (k, h) = parse_pair_key(key).ok_or_else(|| InfiniteError::BadFusion(format!("key {key:?}")))?;
            let (k, h) = (index(k)?, index(h)?);
            let list = entries
                .iter()
                .map(|e| {
                    let class = match &e.class {
                        serde_json::Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    FusionEntry { class, normalizer_meet: e.normalizer_meet }
                })
                .collect();
            fusion.insert((k, h), list);
        }
        let f = FusionData { labels, fusion };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<(), InfiniteError> {
        for (&(k, h), entries) in &self.fusion {
            let (ko, ho) = (self.labels[k].order, self.labels[h].order);
            for e in entries {
                if e.normalizer_meet == 0 || ho % e.normalizer_meet != 0 {
                    return Err(InfiniteError::BadFusion(format!(
                        "|H ∩ N L| = {} does not divide |{}| = {ho}",
                        e.normalizer_meet, self.labels[h].name
                    )));
                }
                if e.normalizer_meet % ko != 0 || ho % ko != 0 {
                    return Err(InfiniteError::BadFusion(format!(
                        "a subgroup of order {ko} cannot be normalized inside a meet of order {}",
                        e.normalizer_meet
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_record(&self) -> FusionRecord {
        let mut fusion = BTreeMap::new();
        for (&(k, h), entries) in &self.fusion {
            let key = format!("({}),({})", self.labels[k].name, self.labels[h].name);
            let list = entries
                .iter()
                .map(|e| FusionEntryRecord {
                    class: serde_json::Value::from(e.class.clone()),
                    normalizer_meet: e.normalizer_meet,
                })
                .collect();
            fusion.insert(key, list);
        }
        FusionRecord {
            labels: self.labels.iter().map(|l| FusionLabelRecord { name: l.name.clone(), order: l.order }).collect(),
            fusion,
        }
    }

    /// Fusion of a finite group, from its own subgroup lattice.
    pub fn from_finite_group(ring: &BurnsideRing) -> Self {
        let g = &**ring.group();
        let ccs = ring.ccs();
        let labels = ccs.classes().iter().map(|c| FusionLabel { name: c.label.clone(), order: c.order() }).collect();
        let mut fusion = HashMap::new();
        for (hi, hc) in ccs.classes().iter().enumerate() {
            let h = &hc.representative;
            // subgroups of H up to H-conjugacy
            let inside: Vec<&Subgroup> = ccs.subgroups().iter().filter(|s| s.is_subset(h)).collect();
            let mut done: HashSet<Vec<usize>> = HashSet::new();
            let mut per_k: Vec<Vec<FusionEntry>> = vec![Vec::new(); ccs.len()];
            let mut counter = 0usize;
            for l in inside {
                if done.contains(l.elements()) {
                    continue;
                }
                for &x in h.elements() {
                    done.insert(l.conjugate(g, x).elements().to_vec());
                }
                let k = ccs.class_of(l).unwrap();
                let meet = h.intersection(g, &l.normalizer(g)).order();
                per_k[k].push(FusionEntry { class: counter.to_string(), normalizer_meet: meet });
                counter += 1;
            }
            for (k, list) in per_k.into_iter().enumerate() {
                fusion.insert((k, hi), list);
            }
        }
        FusionData { labels, fusion }
    }

    /// Extension of a free abelian group by `ℤ/p` with `r` conjugacy classes
    /// of subgroups of order `p`: labels `1`, `H1`, …, `Hr`.
    pub fn extension_by_cyclic(p: usize, r: usize) -> Self {
        let mut labels = vec![FusionLabel { name: "1".into(), order: 1 }];
        labels.extend((1..=r).map(|i| FusionLabel { name: format!("H{i}"), order: p }));
        let mut fusion = HashMap::new();
        fusion.insert((0, 0), vec![FusionEntry { class: "1".into(), normalizer_meet: 1 }]);
        for j in 1..=r {
            fusion.insert((0, j), vec![FusionEntry { class: "1".into(), normalizer_meet: p }]);
            fusion.insert((j, 0), Vec::new());
            for i in 1..=r {
                let list =
                    if i == j { vec![FusionEntry { class: format!("H{j}"), normalizer_meet: p }] } else { Vec::new() };
                fusion.insert((i, j), list);
            }
        }
        FusionData { labels, fusion }
    }

    pub fn label_index(&self, name: &str) -> Result<usize, InfiniteError> {
        self.labels.iter().position(|l| l.name == name).ok_or_else(|| InfiniteError::MissingLabel(name.into()))
    }

    pub fn entries(&self, k: usize, h: usize) -> Result<&[FusionEntry], InfiniteError> {
        self.fusion
            .get(&(k, h))
            .map(Vec::as_slice)
            .ok_or_else(|| InfiniteError::MissingFusionEntry(self.labels[k].name.clone(), self.labels[h].name.clone()))
    }

    /// `(K) ≼ (H)` iff some subgroup of `H` is conjugate to `K`.
    pub fn subconjugate(&self, k: usize, h: usize) -> Result<bool, InfiniteError> {
        Ok(!self.entries(k, h)?.is_empty())
    }

    /// `ch_K(G/H) = Σ_{(L) ∈ 𝓛_K(H)} |K| / |H ∩ N_G L|`
    pub fn basis_character(&self, k: usize, h: usize) -> Result<BigRational, InfiniteError> {
        let ko = BigInt::from(self.labels[k].order);
        Ok(self.entries(k, h)?.iter().map(|e| BigRational::new(ko.clone(), BigInt::from(e.normalizer_meet))).sum())
    }
}

/// L²-character of a covariant element at the label `k`.
pub fn l2_character(t: &CovariantElement, k: &str, f: &FusionData) -> Result<BigRational, InfiniteError> {
    let k = f.label_index(k)?;
    let mut total = BigRational::zero();
    for (h, c) in t {
        if c.is_zero() {
            continue;
        }
        let h = f.label_index(h)?;
        total += f.basis_character(k, h)? * BigRational::from_integer(c.clone());
    }
    Ok(total)
}

/// Output of [`integrality_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityCertificate {
    pub accepted: bool,
    /// Support labels, numerated compatibly with subconjugacy.
    pub order: Vec<String>,
    /// `a_t[i][j] = ch_{H_i}(G/H_j)`
    pub a_t: RatMatrix,
    pub b_t: RatMatrix,
    /// `B_T · x`
    pub coordinates: Vec<BigRational>,
}

impl IntegralityCertificate {
    /// Each relation `Σ_j B_T(i,j)·x(j) ∈ ℤ` as text.
    pub fn relations(&self) -> Vec<String> {
        (0..self.order.len())
            .map(|i| {
                let mut s = String::new();
                for (j, label) in self.order.iter().enumerate() {
                    let c = self.b_t.get(i, j);
                    if c.is_zero() {
                        continue;
                    }
                    let mag = c.abs();
                    if s.is_empty() {
                        if c.is_negative() {
                            s.push('-');
                        }
                    } else {
                        s += if c.is_negative() { " - " } else { " + " };
                    }
                    if !mag.is_one() {
                        s += &format!("{mag}*");
                    }
                    s += &format!("x({label})");
                }
                format!("{s} in Z")
            })
            .collect()
    }
}

/// Burnside integrality relations on the support of `x`.
pub fn integrality_check(
    x: &BTreeMap<String, BigRational>,
    f: &FusionData,
) -> Result<IntegralityCertificate, InfiniteError> {
    let support: Vec<usize> = x.keys().map(|l| f.label_index(l)).collect::<Result<_, _>>()?;
    let members: HashSet<usize> = support.iter().copied().collect();
    for &h in &support {
        for k in 0..f.labels.len() {
            if f.subconjugate(k, h)? && !members.contains(&k) {
                return Err(InfiniteError::SupportNotClosed {
                    label: f.labels[h].name.clone(),
                    missing: f.labels[k].name.clone(),
                });
            }
        }
    }
    let mut order = support;
    order.sort_by_key(|&i| (f.labels[i].order, i));
    let n = order.len();
    let mut a = RatMatrix::zeros(n, n);
    for (i, &ki) in order.iter().enumerate() {
        for (j, &hj) in order.iter().enumerate() {
            a.set(i, j, f.basis_character(ki, hj)?);
        }
        if !a.get(i, i).is_one() {
            return Err(InfiniteError::NonUnitDiagonal {
                label: f.labels[ki].name.clone(),
                value: a.get(i, i).to_string(),
            });
        }
    }
    // reversing the numeration turns the upper unitriangular A_T into a lower one
    let mut rev = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            rev.set(i, j, a.get(n - 1 - i, n - 1 - j).clone());
        }
    }
    let solve = |b: &[BigRational]| -> Result<Vec<BigRational>, InfiniteError> {
        let b_rev: Vec<BigRational> = b.iter().rev().cloned().collect();
        let mut y = solve_unitriangular_rational(&rev, &b_rev)?;
        y.reverse();
        Ok(y)
    };
    let mut b_t = RatMatrix::zeros(n, n);
    for j in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[j] = BigRational::one();
        for (i, v) in solve(&e)?.into_iter().enumerate() {
            b_t.set(i, j, v);
        }
    }
    let xs: Vec<BigRational> = order.iter().map(|&i| x[&f.labels[i].name].clone()).collect();
    let coordinates = solve(&xs)?;
    let accepted = coordinates.iter().all(|c| c.is_integer());
    Ok(IntegralityCertificate {
        accepted,
        order: order.iter().map(|&i| f.labels[i].name.clone()).collect(),
        a_t: a,
        b_t,
        coordinates,
    })
}

/// Global L²-character of a covariant element on the given labels.
pub fn global_character(
    t: &CovariantElement,
    labels: &[String],
    f: &FusionData,
) -> Result<BTreeMap<String, BigRational>, InfiniteError> {
    labels.iter().map(|k| Ok((k.clone(), l2_character(t, k, f)?))).collect()
}

/// `ν(x, [G/H])`: number of `H`-orbits of the component of `x` at `H`,
/// extended bilinearly. Every realization of a label must agree.
pub fn pairing_nu(
    d: &SubFinDiagram,
    s: &CcsfStructure,
    lim: &InverseLimit,
    x: &[BigInt],
    t: &CovariantElement,
) -> Result<BigInt, InfiniteError> {
    let mut total = BigInt::zero();
    for (label, c) in t {
        if c.is_zero() {
            continue;
        }
        let l = s.label_index(label).ok_or_else(|| InfiniteError::UnreachableLabel(label.clone()))?;
        let mut value: Option<BigInt> = None;
        for (obj, class) in s.realizations(l) {
            let ring = d.ring(obj);
            let h = &ring.ccs().class(class).representative;
            let orbits: BigInt = ring.restrict_to(h, &lim.component(x, obj))?.coeffs.iter().sum();
            match &value {
                None => value = Some(orbits),
                Some(v) if *v != orbits => return Err(InfiniteError::InconsistentRealization(label.clone())),
                _ => {}
            }
        }
        let v = value.ok_or_else(|| InfiniteError::UnreachableLabel(label.clone()))?;
        total += c * v;
    }
    Ok(total)
}

/// `μ([S], [G/H])`: the H-orbits of `S` restricted along `H → Q`, each
/// contributing the label of its stabilizer.
pub fn pairing_mu(
    d: &SubFinDiagram,
    c: &CcsfStructure,
    s: &FinsetElement,
    t: &CovariantElement,
) -> Result<CovariantElement, InfiniteError> {
    let mut out = CovariantElement::new();
    for (label, coef) in t {
        if coef.is_zero() {
            continue;
        }
        let l = c.label_index(label).ok_or_else(|| InfiniteError::UnreachableLabel(label.clone()))?;
        let (obj, class) = c
            .realizations(l)
            .into_iter()
            .find(|(o, _)| s.homs.contains_key(o))
            .ok_or_else(|| InfiniteError::MissingHomomorphism(label.clone()))?;
        let ring_o = d.ring(obj);
        let h = &ring_o.ccs().class(class).representative;
        let (ring_h, incl) = ring_o.subgroup_ring(h);
        let to_q = incl.then(&s.homs[&obj])?;
        let res = s.quotient.restrict_along(&to_q, &ring_h, &s.element)?;
        for (i, n) in res.coeffs.iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            let stab = incl.image_of(&ring_h.ccs().class(i).representative);
            let target = c.assign[obj][ring_o.ccs().class_of(&stab).unwrap()];
            *out.entry(c.labels[target].clone()).or_insert_with(BigInt::zero) += coef * n;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// `T^G`: restricts a finite G-set to every diagram object and checks the
/// diagram equations.
pub fn map_t(d: &SubFinDiagram, s: &FinsetElement) -> Result<Vec<BurnsideElement>, InfiniteError> {
    let mut parts = Vec::with_capacity(d.objects.len());
    for (i, ring) in d.rings.iter().enumerate() {
        let hom = s.homs.get(&i).ok_or_else(|| InfiniteError::MissingHomomorphism(format!("object {i}")))?;
        parts.push(s.quotient.restrict_along(hom, ring, &s.element)?);
    }
    for (k, m) in d.morphisms.iter().enumerate() {
        if d.restrict(m, &parts[m.to])? != parts[m.from] {
            return Err(InfiniteError::IncompatibleComponents(k));
        }
    }
    Ok(parts)
}

/// `V^G`: `[H/K] ↦ (K)` for an element of `A(H)` at a diagram object.
pub fn map_v(obj: usize, a: &BurnsideElement, c: &CcsfStructure) -> CovariantElement {
    let mut out = CovariantElement::new();
    for (i, n) in a.coeffs.iter().enumerate() {
        if !n.is_zero() {
            *out.entry(c.labels[c.assign[obj][i]].clone()).or_insert_with(BigInt::zero) += n;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `Q([S]) = |G\S|`, the sum of coefficients.
pub fn pairing_q(t: &CovariantElement) -> BigInt {
    t.values().sum()
}
