//! Finite groups given by multiplication tables.
//!
//! Elements are indices `0..order`. Subgroups are sorted index sets with a
//! bitmask for fast containment tests. Conjugacy classes of subgroups are
//! kept in a canonical order (by size, then by the lexicographically smallest
//! conjugate) which fixes the basis order of every Burnside-ring vector.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

pub const DEFAULT_ORDER_CAP: usize = 400;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("group order {order} exceeds the cap of {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("unknown group name {0:?}")]
    UnknownName(String),
    #[error("invalid group description: {0}")]
    BadSpec(String),
}

/// A finite group as a certified multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    label: String,
}

impl FiniteGroup {
    /// Validates a Cayley table: square, entries in range, two-sided identity,
    /// inverses, associativity.
    pub fn from_table(table: &[Vec<usize>], label: impl Into<String>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::NotAGroup("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotAGroup(format!("row {i} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(GroupError::NotAGroup(format!("entry {bad} out of range")));
            }
            flat.extend_from_slice(row);
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| flat[e * n + x] == x && flat[x * n + e] == x))
            .ok_or_else(|| GroupError::NotAGroup("no two-sided identity".into()))?;
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| flat[a * n + b] == identity)
                .ok_or_else(|| GroupError::NotAGroup(format!("element {a} has no inverse")))?;
            if flat[b * n + a] != identity {
                return Err(GroupError::NotAGroup(format!("element {a} has no two-sided inverse")));
            }
            inverses[a] = b;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b];
                for c in 0..n {
                    if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                        return Err(GroupError::NotAGroup(format!("associativity fails for ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { order: n, table: flat, identity, inverses, label: label.into() })
    }

    /// Table known to come from a group (quotients, subgroups, products of
    /// validated groups). Only inverses are derived.
    fn from_trusted(order: usize, table: Vec<usize>, identity: usize, label: String) -> Self {
        let mut inverses = vec![0; order];
        for a in 0..order {
            inverses[a] = (0..order).find(|&b| table[a * order + b] == identity).unwrap();
        }
        FiniteGroup { order, table, identity, inverses, label }
    }

    pub fn trivial() -> Self {
        Self::from_trusted(1, vec![0], 0, "C1".into())
    }

    pub fn cyclic(n: usize) -> Self {
        let n = n.max(1);
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self::from_trusted(n, table, 0, format!("C{n}"))
    }

    /// Dihedral group of order `2n`; element `r^i s^e` has index `i + n*e`.
    pub fn dihedral(n: usize) -> Self {
        let n = n.max(1);
        let order = 2 * n;
        let mut table = vec![0; order * order];
        for a in 0..order {
            let (i, ea) = (a % n, a / n);
            for b in 0..order {
                let (j, eb) = (b % n, b / n);
                let rot = if ea == 0 { (i + j) % n } else { (i + n - j) % n };
                table[a * order + b] = rot + n * ((ea + eb) % 2);
            }
        }
        Self::from_trusted(order, table, 0, format!("D{n}"))
    }

    /// Quaternion group; index `2u + s` is `(-1)^s` times unit `u` of `1, i, j, k`.
    pub fn quaternion8() -> Self {
        // unit products: (unit index, sign) for u*v
        const PROD: [[(usize, usize); 4]; 4] = [
            [(0, 0), (1, 0), (2, 0), (3, 0)],
            [(1, 0), (0, 1), (3, 0), (2, 1)],
            [(2, 0), (3, 1), (0, 1), (1, 0)],
            [(3, 0), (2, 0), (1, 1), (0, 1)],
        ];
        let mut table = vec![0; 64];
        for a in 0..8 {
            for b in 0..8 {
                let (u, s) = PROD[a / 2][b / 2];
                table[a * 8 + b] = 2 * u + (s + a % 2 + b % 2) % 2;
            }
        }
        Self::from_trusted(8, table, 0, "Q8".into())
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order, b.order);
        let order = na * nb;
        let mut table = vec![0; order * order];
        for x in 0..order {
            for y in 0..order {
                let p = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
                table[x * order + y] = p;
            }
        }
        let identity = a.identity * nb + b.identity;
        Self::from_trusted(order, table, identity, format!("{}x{}", a.label, b.label))
    }

    /// Permutation group generated by `generators` acting on `0..degree`.
    /// Products compose right to left: `(a*b)(x) = a(b(x))`.
    pub fn from_permutations(
        degree: usize,
        generators: &[Vec<usize>],
        cap: usize,
        label: impl Into<String>,
    ) -> Result<Self, GroupError> {
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(GroupError::BadSpec(format!("{g:?} is not a permutation of {degree} points")));
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let p: Vec<usize> = (0..degree).map(|x| elements[i][g[x]]).collect();
                if !index.contains_key(&p) {
                    if elements.len() == cap {
                        return Err(GroupError::TooLarge { order: cap + 1, cap });
                    }
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let p: Vec<usize> = (0..degree).map(|x| elements[a][elements[b][x]]).collect();
                table[a * n + b] = index[&p];
            }
        }
        Ok(Self::from_trusted(n, table, 0, label.into()))
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..n).map(|x| (x + 1) % n).collect());
        }
        let mut g = Self::from_permutations(n.max(1), &gens, usize::MAX, format!("S{n}")).unwrap();
        g.label = format!("S{n}");
        g
    }

    pub fn alternating(n: usize) -> Self {
        let gens: Vec<Vec<usize>> = (2..n)
            .map(|k| {
                let mut p: Vec<usize> = (0..n).collect();
                p[0] = 1;
                p[1] = k;
                p[k] = 0;
                p
            })
            .collect();
        Self::from_permutations(n.max(1), &gens, usize::MAX, format!("A{n}")).unwrap()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `x a x⁻¹`
    #[inline]
    pub fn conj(&self, x: usize, a: usize) -> usize {
        self.mul(self.mul(x, a), self.inverses[x])
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|a| self.element_order(a) == self.order)
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.label, self.order)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.identity == other.identity
    }
}

impl Eq for FiniteGroup {}

/// Input formats accepted by [`build_group`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Cayley {
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    Perm {
        degree: usize,
        generators: Vec<PermGenerator>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    Named {
        name: String,
    },
    Product {
        factors: Vec<GroupSpec>,
    },
}

/// A permutation on points `1..=degree`, either as a list of cycles or in
/// cycle notation such as `"(1 2)(3 4 5)"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PermGenerator {
    Cycles(Vec<Vec<usize>>),
    Text(String),
}

impl PermGenerator {
    fn cycles(&self) -> Result<Vec<Vec<usize>>, GroupError> {
        match self {
            PermGenerator::Cycles(c) => Ok(c.clone()),
            PermGenerator::Text(s) => parse_cycles(s),
        }
    }

    /// Image array on `0..degree`.
    pub fn to_images(&self, degree: usize) -> Result<Vec<usize>, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        for cycle in self.cycles()? {
            for (k, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(GroupError::BadSpec(format!("point {pt} outside 1..={degree}")));
                }
                if std::mem::replace(&mut moved[pt - 1], true) {
                    return Err(GroupError::BadSpec(format!("point {pt} appears twice")));
                }
                images[pt - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Ok(images)
    }
}

fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>, GroupError> {
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| GroupError::BadSpec(format!("bad cycle notation {s:?}")))?;
        let cycle = body
            .0
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| GroupError::BadSpec(format!("bad point {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        cycles.push(cycle);
        rest = body.1.trim_start();
    }
    Ok(cycles)
}

/// Builds and validates a group, refusing orders above `cap`.
pub fn build_group(spec: &GroupSpec, cap: usize) -> Result<FiniteGroup, GroupError> {
    let g = match spec {
        GroupSpec::Cayley { table, label } => {
            if table.len() > cap {
                return Err(GroupError::TooLarge { order: table.len(), cap });
            }
            FiniteGroup::from_table(table, label.clone().unwrap_or_else(|| format!("G{}", table.len())))?
        }
        GroupSpec::Perm { degree, generators, label } => {
            let gens = generators.iter().map(|g| g.to_images(*degree)).collect::<Result<Vec<_>, _>>()?;
            let label = label.clone().unwrap_or_else(|| format!("Perm{degree}"));
            let g = FiniteGroup::from_permutations(*degree, &gens, cap, label)?;
            FiniteGroup::from_table(&g.table_rows(), g.label)?
        }
        GroupSpec::Named { name } => named_group(name, cap)?,
        GroupSpec::Product { factors } => {
            let mut acc = FiniteGroup::trivial();
            let mut first = true;
            for f in factors {
                let h = build_group(f, cap)?;
                if acc.order() * h.order() > cap {
                    return Err(GroupError::TooLarge { order: acc.order() * h.order(), cap });
                }
                acc = if first { h } else { FiniteGroup::direct_product(&acc, &h) };
                first = false;
            }
            acc
        }
    };
    if g.order() > cap {
        return Err(GroupError::TooLarge { order: g.order(), cap });
    }
    Ok(g)
}

/// Named groups: `C<n>`/`Z<n>`/`cyclic(n)`, `D<n>`/`dihedral(n)` (order 2n),
/// `S<n>`, `A<n>` (n ≤ 5), `Q8`, `V4`/`Klein`, `trivial`, and direct products
/// joined with `x`, e.g. `C2xS4`.
pub fn named_group(name: &str, cap: usize) -> Result<FiniteGroup, GroupError> {
    let trimmed = name.trim();
    let lower = trimmed.to_ascii_lowercase().replace(['×', '*'], "x");
    let parts: Vec<&str> = lower.split('x').map(str::trim).collect();
    if parts.len() > 1 {
        let mut acc: Option<FiniteGroup> = None;
        for p in parts {
            let h = named_group(p, cap)?;
            acc = Some(match acc {
                None => h,
                Some(a) => {
                    if a.order() * h.order() > cap {
                        return Err(GroupError::TooLarge { order: a.order() * h.order(), cap });
                    }
                    FiniteGroup::direct_product(&a, &h)
                }
            });
        }
        return acc.ok_or_else(|| GroupError::UnknownName(trimmed.into()));
    }
    let unknown = || GroupError::UnknownName(trimmed.into());
    let (family, arg) = split_family(&lower).ok_or_else(unknown)?;
    let check = |order: usize| {
        if order > cap {
            Err(GroupError::TooLarge { order, cap })
        } else {
            Ok(())
        }
    };
    match (family, arg) {
        ("trivial", None) | ("1", None) => Ok(FiniteGroup::trivial()),
        ("q8" | "quaternion8" | "quaternion", None) => Ok(FiniteGroup::quaternion8()),
        ("v4" | "klein" | "klein4", None) => {
            Ok(FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)).with_label("V4"))
        }
        ("c" | "z" | "z/" | "cyclic", Some(n)) if n >= 1 => {
            check(n)?;
            Ok(FiniteGroup::cyclic(n))
        }
        ("d" | "dihedral", Some(n)) if n >= 1 => {
            check(2 * n)?;
            Ok(FiniteGroup::dihedral(n))
        }
        ("s" | "symmetric" | "sym", Some(n)) if n <= 5 => {
            check((1..=n).product())?;
            Ok(FiniteGroup::symmetric(n))
        }
        ("a" | "alternating" | "alt", Some(n)) if n <= 5 => {
            check((1..=n).product::<usize>().div_ceil(2))?;
            Ok(FiniteGroup::alternating(n))
        }
        _ => Err(unknown()),
    }
}

/// `"cyclic(12)"` → `("cyclic", Some(12))`, `"d4"` → `("d", Some(4))`, `"q8"` → `("q8", None)`.
fn split_family(s: &str) -> Option<(&str, Option<usize>)> {
    if let Some(open) = s.find('(') {
        let inner = s[open + 1..].strip_suffix(')')?;
        return Some((s[..open].trim(), Some(inner.trim().parse().ok()?)));
    }
    if matches!(s, "q8" | "v4" | "klein4") {
        return Some((s, None));
    }
    let digits = s.find(|c: char| c.is_ascii_digit());
    match digits {
        Some(0) => (s == "1").then_some(("1", None)),
        Some(i) => Some((&s[..i], Some(s[i..].parse().ok()?))),
        None => Some((s, None)),
    }
}

/// Named groups of order at most 48 used by the exhaustive test suites.
pub fn catalog() -> Vec<&'static str> {
    vec![
        "trivial",
        "C2",
        "C3",
        "C4",
        "C5",
        "C6",
        "C7",
        "C8",
        "C9",
        "C10",
        "C12",
        "C16",
        "C24",
        "D3",
        "D4",
        "D5",
        "D6",
        "D7",
        "D8",
        "D9",
        "D10",
        "D12",
        "D16",
        "D24",
        "S3",
        "S4",
        "A4",
        "Q8",
        "V4",
        "C2xC4",
        "C2xC2xC2",
        "C3xC3",
        "C2xC6",
        "C4xC4",
        "C2xQ8",
        "C3xS3",
        "C2xD4",
        "C2xA4",
        "C2xS4",
        "C2xC2xC2xC2",
        "C3xQ8",
        "C2xD6",
    ]
}

pub fn catalog_group(name: &str) -> FiniteGroup {
    named_group(name, usize::MAX).unwrap_or_else(|e| panic!("catalog entry {name}: {e}"))
}

pub fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count()
}

/// A subgroup as a sorted set of element indices of its parent group.
#[derive(Clone)]
pub struct Subgroup {
    elements: Vec<usize>,
    mask: FixedBitSet,
    gens: Vec<usize>,
}

impl Subgroup {
    fn from_sorted(g: &FiniteGroup, elements: Vec<usize>, gens: Vec<usize>) -> Self {
        let mut mask = FixedBitSet::with_capacity(g.order());
        for &x in &elements {
            mask.insert(x);
        }
        Subgroup { elements, mask, gens }
    }

    /// Closure of a set of generators.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        let mut mask = FixedBitSet::with_capacity(g.order());
        mask.insert(g.identity());
        let mut elements = vec![g.identity()];
        let mut i = 0;
        while i < elements.len() {
            let x = elements[i];
            for &s in gens {
                let y = g.mul(x, s);
                if !mask.put(y) {
                    elements.push(y);
                }
            }
            i += 1;
        }
        elements.sort_unstable();
        let gens = gens.iter().copied().filter(|&s| s != g.identity()).collect();
        Subgroup { elements, mask, gens }
    }

    /// Validates an explicit element set.
    pub fn from_elements(g: &FiniteGroup, elements: &[usize]) -> Result<Self, GroupError> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if let Some(&bad) = elements.iter().find(|&&x| x >= g.order()) {
            return Err(GroupError::NotASubgroup(format!("element {bad} out of range")));
        }
        let s = Self::from_sorted(g, elements, Vec::new());
        if !s.contains(g.identity()) {
            return Err(GroupError::NotASubgroup("missing identity".into()));
        }
        for &a in &s.elements {
            if !s.contains(g.inv(a)) {
                return Err(GroupError::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &s.elements {
                if !s.contains(g.mul(a, b)) {
                    return Err(GroupError::NotASubgroup(format!("product {a}*{b} missing")));
                }
            }
        }
        if !g.order().is_multiple_of(s.order()) {
            return Err(GroupError::NotASubgroup("order does not divide the group order".into()));
        }
        let gens = minimal_generators(g, &s);
        Ok(Subgroup { gens, ..s })
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        let all: Vec<usize> = g.elements().collect();
        let gens = minimal_generators(g, &Self::from_sorted(g, all.clone(), Vec::new()));
        Self::from_sorted(g, all, gens)
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::from_sorted(g, vec![g.identity()], Vec::new())
    }

    pub fn cyclic(g: &FiniteGroup, x: usize) -> Self {
        Self::generated(g, &[x])
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.contains(x)
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.mask.is_subset(&other.mask)
    }

    /// `x H x⁻¹`
    pub fn conjugate(&self, g: &FiniteGroup, x: usize) -> Subgroup {
        let mut elements: Vec<usize> = self.elements.iter().map(|&a| g.conj(x, a)).collect();
        elements.sort_unstable();
        let gens = self.gens.iter().map(|&a| g.conj(x, a)).collect();
        Self::from_sorted(g, elements, gens)
    }

    pub fn intersection(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        let elements: Vec<usize> = self.elements.iter().copied().filter(|&x| other.contains(x)).collect();
        let s = Self::from_sorted(g, elements, Vec::new());
        let gens = minimal_generators(g, &s);
        Subgroup { gens, ..s }
    }

    /// Subgroup generated by `self` and `other`.
    pub fn join(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().copied().filter(|&x| !self.contains(x)));
        Self::generated(g, &gens)
    }

    pub fn is_cyclic(&self, g: &FiniteGroup) -> bool {
        self.elements.iter().any(|&x| g.element_order(x) == self.order())
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        g.elements().all(|x| self.gens.iter().all(|&a| self.contains(g.conj(x, a))))
    }

    pub fn normalizer(&self, g: &FiniteGroup) -> Subgroup {
        let members: Vec<usize> =
            g.elements().filter(|&x| self.gens.iter().all(|&a| self.contains(g.conj(x, a)))).collect();
        let s = Self::from_sorted(g, members, Vec::new());
        let gens = minimal_generators(g, &s);
        Subgroup { gens, ..s }
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.order(), &self.elements).cmp(&(other.order(), &other.elements))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}

/// Greedy generating set: add the smallest element not yet generated.
fn minimal_generators(g: &FiniteGroup, s: &Subgroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut current = Subgroup::trivial(g);
    for &x in &s.elements {
        if !current.contains(x) {
            gens.push(x);
            current = Subgroup::generated(g, &gens);
            if current.order() == s.order() {
                break;
            }
        }
    }
    gens
}

/// All subgroups, in canonical order (size, then sorted element list).
///
/// Seeds with the cyclic subgroups and closes under joins with cyclic
/// subgroups; every subgroup is such an iterated join.
pub fn enumerate_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let cyclics = cyclic_subgroups(g);
    let mut seen: HashSet<FixedBitSet> = cyclics.iter().map(|c| c.mask.clone()).collect();
    let mut all = cyclics.clone();
    let mut i = 0;
    while i < all.len() {
        let h = all[i].clone();
        for c in &cyclics {
            if c.is_subset(&h) {
                continue;
            }
            let j = h.join(g, c);
            if seen.insert(j.mask.clone()) {
                all.push(j);
            }
        }
        i += 1;
    }
    all.sort();
    all
}

/// Distinct cyclic subgroups, in canonical order.
pub fn cyclic_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in g.elements() {
        let c = Subgroup::cyclic(g, x);
        if seen.insert(c.mask.clone()) {
            out.push(c);
        }
    }
    out.sort();
    out
}

/// One conjugacy class of subgroups together with its normalizer and Weyl group.
#[derive(Clone, Debug)]
pub struct CcsClass {
    pub representative: Subgroup,
    pub conjugates: Vec<Subgroup>,
    pub normalizer: Subgroup,
    pub weyl_order: usize,
    pub weyl_group: Arc<FiniteGroup>,
    /// Weyl-group index of each normalizer element (by position in `normalizer.elements()`).
    weyl_index: Vec<usize>,
    /// Weyl element → the coset of the representative it stands for.
    weyl_cosets: Vec<Vec<usize>>,
    pub label: String,
}

impl CcsClass {
    pub fn order(&self) -> usize {
        self.representative.order()
    }

    /// Image of a normalizer element in the Weyl group.
    pub fn project(&self, x: usize) -> Option<usize> {
        self.normalizer.elements().binary_search(&x).ok().map(|p| self.weyl_index[p])
    }

    /// The subgroup of G lying over a subgroup of the Weyl group.
    pub fn weyl_preimage(&self, g: &FiniteGroup, sub: &Subgroup) -> Subgroup {
        let mut elements: Vec<usize> =
            sub.elements().iter().flat_map(|&w| self.weyl_cosets[w].iter().copied()).collect();
        elements.sort_unstable();
        let mut gens = self.representative.generators().to_vec();
        gens.extend(sub.generators().iter().map(|&w| self.weyl_cosets[w][0]));
        Subgroup::from_sorted(g, elements, gens)
    }
}

/// Conjugacy classes of subgroups in canonical order.
#[derive(Clone, Debug)]
pub struct CcsTable {
    group: Arc<FiniteGroup>,
    classes: Vec<CcsClass>,
    subgroups: Vec<Subgroup>,
    class_of_subgroup: HashMap<FixedBitSet, usize>,
}

pub fn conjugacy_classes_of_subgroups(g: &Arc<FiniteGroup>) -> CcsTable {
    CcsTable::new(g)
}

impl CcsTable {
    pub fn new(g: &Arc<FiniteGroup>) -> Self {
        let subgroups = enumerate_subgroups(g);
        let mut class_of: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut raw: Vec<Vec<Subgroup>> = Vec::new();
        for h in &subgroups {
            if class_of.contains_key(&h.mask) {
                continue;
            }
            let mut conj: Vec<Subgroup> = Vec::new();
            let mut seen = HashSet::new();
            for x in g.elements() {
                let c = h.conjugate(g, x);
                if seen.insert(c.mask.clone()) {
                    conj.push(c);
                }
            }
            conj.sort();
            for c in &conj {
                class_of.insert(c.mask.clone(), raw.len());
            }
            raw.push(conj);
        }
        // subgroups are visited in canonical order, so the first member of
        // each class is its smallest conjugate and `raw` is already sorted
        let mut per_order: HashMap<usize, usize> = HashMap::new();
        let classes = raw
            .into_iter()
            .map(|conjugates| {
                let representative = conjugates[0].clone();
                let k = per_order.entry(representative.order()).or_insert(0);
                let label = format!("{}:{}", representative.order(), k);
                *k += 1;
                let normalizer = representative.normalizer(g);
                let (weyl_group, weyl_index, weyl_cosets) = weyl_quotient(g, &normalizer, &representative);
                CcsClass {
                    weyl_order: normalizer.order() / representative.order(),
                    representative,
                    conjugates,
                    normalizer,
                    weyl_group: Arc::new(weyl_group),
                    weyl_index,
                    weyl_cosets,
                    label,
                }
            })
            .collect();
        CcsTable { group: Arc::clone(g), classes, subgroups, class_of_subgroup: class_of }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[CcsClass] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &CcsClass {
        &self.classes[i]
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    /// Class index of an arbitrary subgroup of the group.
    pub fn class_of(&self, h: &Subgroup) -> Option<usize> {
        self.class_of_subgroup.get(&h.mask).copied()
    }

    pub fn labels(&self) -> Vec<String> {
        self.classes.iter().map(|c| c.label.clone()).collect()
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.label == label.trim())
    }

    /// Index of the class of the trivial subgroup (always 0).
    pub fn trivial_class(&self) -> usize {
        0
    }

    /// Index of the class of the whole group (always last).
    pub fn top_class(&self) -> usize {
        self.classes.len() - 1
    }
}

/// Quotient `n / h` for `h` normal in `n`, with cosets numbered by their least element.
fn weyl_quotient(g: &FiniteGroup, n: &Subgroup, h: &Subgroup) -> (FiniteGroup, Vec<usize>, Vec<Vec<usize>>) {
    let mut index = vec![usize::MAX; n.order()];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for (p, &x) in n.elements().iter().enumerate() {
        if index[p] != usize::MAX {
            continue;
        }
        let mut coset: Vec<usize> = h.elements().iter().map(|&y| g.mul(x, y)).collect();
        coset.sort_unstable();
        for &y in &coset {
            index[n.elements().binary_search(&y).unwrap()] = cosets.len();
        }
        cosets.push(coset);
    }
    let m = cosets.len();
    let pos = |x: usize| index[n.elements().binary_search(&x).unwrap()];
    let mut table = vec![0; m * m];
    for a in 0..m {
        for b in 0..m {
            table[a * m + b] = pos(g.mul(cosets[a][0], cosets[b][0]));
        }
    }
    let identity = pos(g.identity());
    let w = FiniteGroup::from_trusted(m, table, identity, format!("W({})", h.order()));
    (w, index, cosets)
}

/// |(G/H)^K| by counting the cosets gH with g⁻¹Kg ⊆ H.
pub fn mark(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> usize {
    if !g.order().is_multiple_of(h.order()) || !h.order().is_multiple_of(k.order()) {
        return 0;
    }
    let mut fixed = 0;
    let mut seen = FixedBitSet::with_capacity(g.order());
    for x in g.elements() {
        if seen.contains(x) {
            continue;
        }
        for &y in h.elements() {
            seen.insert(g.mul(x, y));
        }
        let xi = g.inv(x);
        if k.generators().iter().all(|&a| h.contains(g.conj(xi, a))) {
            fixed += 1;
        }
    }
    fixed
}

/// One representative (the least element) per double coset `H x K`, ascending.
pub fn double_cosets(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Vec<usize> {
    let mut seen = FixedBitSet::with_capacity(g.order());
    let mut reps = Vec::new();
    for x in g.elements() {
        if seen.contains(x) {
            continue;
        }
        reps.push(x);
        for &a in h.elements() {
            let ax = g.mul(a, x);
            for &b in k.elements() {
                seen.insert(g.mul(ax, b));
            }
        }
    }
    reps
}

/// Cyclic-subgroup class data of a group, as used by the Burnside congruences.
#[derive(Clone, Debug)]
pub struct CyclicClassData {
    pub subgroup: Subgroup,
    /// Number of elements generating the subgroup.
    pub generator_count: usize,
    /// Number of conjugates, i.e. the index of the normalizer.
    pub index_of_normalizer: usize,
}

pub fn cyclic_subgroup_data(w: &FiniteGroup) -> Vec<CyclicClassData> {
    let mut generators: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut cyclics = Vec::new();
    for x in w.elements() {
        let c = Subgroup::cyclic(w, x);
        let count = generators.entry(c.mask.clone()).or_insert(0);
        if *count == 0 {
            cyclics.push(c);
        }
        *count += 1;
    }
    cyclics.sort();
    let mut assigned = HashSet::new();
    let mut out = Vec::new();
    for c in cyclics {
        if assigned.contains(&c.mask) {
            continue;
        }
        let mut conj = HashSet::new();
        for x in w.elements() {
            conj.insert(c.conjugate(w, x).mask);
        }
        let index_of_normalizer = conj.len();
        assigned.extend(conj);
        out.push(CyclicClassData { generator_count: generators[&c.mask], subgroup: c, index_of_normalizer });
    }
    out
}

/// A homomorphism between finite groups, certified on construction.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    images: Vec<usize>,
    injective: bool,
}

impl GroupHom {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, images: Vec<usize>) -> Result<Self, GroupError> {
        if images.len() != source.order() {
            return Err(GroupError::NotAHomomorphism(format!(
                "{} images for a group of order {}",
                images.len(),
                source.order()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&y| y >= target.order()) {
            return Err(GroupError::NotAHomomorphism(format!("image {bad} out of range")));
        }
        for a in source.elements() {
            for b in source.elements() {
                if images[source.mul(a, b)] != target.mul(images[a], images[b]) {
                    return Err(GroupError::NotAHomomorphism(format!("fails on ({a}, {b})")));
                }
            }
        }
        let distinct: HashSet<usize> = images.iter().copied().collect();
        let injective = distinct.len() == images.len();
        Ok(GroupHom { source, target, images, injective })
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> Self {
        GroupHom { source: Arc::clone(g), target: Arc::clone(g), images: g.elements().collect(), injective: true }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom, GroupError> {
        if *self.target != *other.source {
            return Err(GroupError::NotAHomomorphism("composition of non-matching maps".into()));
        }
        let images = self.images.iter().map(|&x| other.images[x]).collect::<Vec<_>>();
        let distinct: HashSet<usize> = images.iter().copied().collect();
        Ok(GroupHom {
            source: Arc::clone(&self.source),
            target: Arc::clone(&other.target),
            injective: distinct.len() == images.len(),
            images,
        })
    }

    pub fn image_of(&self, h: &Subgroup) -> Subgroup {
        let mut elements: Vec<usize> = h.elements().iter().map(|&x| self.images[x]).collect();
        elements.sort_unstable();
        elements.dedup();
        let gens = h.generators().iter().map(|&x| self.images[x]).collect();
        Subgroup::from_sorted(&self.target, elements, gens)
    }

    pub fn preimage_of(&self, h: &Subgroup) -> Subgroup {
        let elements: Vec<usize> = self.source.elements().filter(|&x| h.contains(self.images[x])).collect();
        let s = Subgroup::from_sorted(&self.source, elements, Vec::new());
        let gens = minimal_generators(&self.source, &s);
        Subgroup { gens, ..s }
    }
}

/// Quotient by a normal subgroup, with the projection.
pub fn quotient_group(g: &Arc<FiniteGroup>, n: &Subgroup) -> Result<(Arc<FiniteGroup>, GroupHom), GroupError> {
    if !n.is_normal(g) {
        return Err(GroupError::NotNormal);
    }
    let whole = Subgroup::whole(g);
    let (q, index, _) = weyl_quotient(g, &whole, n);
    let q = Arc::new(q.with_label(format!("{}/{}", g.label(), n.order())));
    let hom = GroupHom { source: Arc::clone(g), target: Arc::clone(&q), injective: n.order() == 1, images: index };
    Ok((q, hom))
}

/// A subgroup as a group in its own right, elements numbered by position in
/// `h.elements()`, together with its inclusion.
pub fn subgroup_as_group(g: &Arc<FiniteGroup>, h: &Subgroup) -> (Arc<FiniteGroup>, GroupHom) {
    let els = h.elements();
    let m = els.len();
    let pos = |x: usize| els.binary_search(&x).unwrap();
    let mut table = vec![0; m * m];
    for a in 0..m {
        for b in 0..m {
            table[a * m + b] = pos(g.mul(els[a], els[b]));
        }
    }
    let sub = Arc::new(FiniteGroup::from_trusted(m, table, pos(g.identity()), format!("{}<{}>", g.label(), m)));
    let hom = GroupHom { source: Arc::clone(&sub), target: Arc::clone(g), images: els.to_vec(), injective: true };
    (sub, hom)
}

/// The relation "some conjugate of class i lies in class j".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubconjugacyOrder {
    n: usize,
    leq: Vec<bool>,
}

impl SubconjugacyOrder {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n + j]
    }
}

pub fn subconjugacy_order(ccs: &CcsTable) -> SubconjugacyOrder {
    let n = ccs.len();
    let mut leq = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            let target = &ccs.class(j).representative;
            leq[i * n + j] = ccs.class(i).conjugates.iter().any(|c| c.is_subset(target));
        }
    }
    SubconjugacyOrder { n, leq }
}

/// Conjugacy classes of elements, ordered by least member.
#[derive(Clone, Debug)]
pub struct ElementClasses {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl ElementClasses {
    pub fn representative(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

pub fn element_classes(g: &FiniteGroup) -> ElementClasses {
    let mut class_of = vec![usize::MAX; g.order()];
    let mut classes = Vec::new();
    for a in g.elements() {
        if class_of[a] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = g.elements().map(|x| g.conj(x, a)).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            class_of[m] = classes.len();
        }
        classes.push(members);
    }
    ElementClasses { classes, class_of }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(g: FiniteGroup) -> Arc<FiniteGroup> {
        Arc::new(g)
    }

    #[test]
    fn named_orders() {
        for (name, order) in [
            ("C5", 5),
            ("S3", 6),
            ("D4", 8),
            ("Q8", 8),
            ("V4", 4),
            ("A4", 12),
            ("S4", 24),
            ("A5", 60),
            ("trivial", 1),
            ("C2xS4", 48),
            ("dihedral(6)", 12),
            ("cyclic(7)", 7),
        ] {
            assert_eq!(named_group(name, DEFAULT_ORDER_CAP).unwrap().order(), order, "{name}");
        }
        assert!(matches!(named_group("S6", DEFAULT_ORDER_CAP), Err(GroupError::UnknownName(_))));
        assert!(matches!(named_group("C500", DEFAULT_ORDER_CAP), Err(GroupError::TooLarge { .. })));
        assert!(FiniteGroup::cyclic(5).is_abelian());
        assert!(!FiniteGroup::quaternion8().is_abelian());
    }

    #[test]
    fn built_in_tables_satisfy_axioms() {
        for name in catalog() {
            let g = catalog_group(name);
            FiniteGroup::from_table(&g.table_rows(), name).unwrap();
        }
    }

    #[test]
    fn perm_spec_orbit_closure() {
        let spec: GroupSpec =
            serde_json::from_str(r#"{"kind":"perm","degree":4,"generators":[[[1,2]],"(1 2 3 4)"]}"#).unwrap();
        assert_eq!(build_group(&spec, DEFAULT_ORDER_CAP).unwrap().order(), 24);
        let capped = build_group(&spec, 10);
        assert!(matches!(capped, Err(GroupError::TooLarge { .. })));
    }

    #[test]
    fn cayley_rejects_non_groups() {
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(FiniteGroup::from_table(&bad, "x"), Err(GroupError::NotAGroup(_))));
        // a Latin square without associativity
        let quasi = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(&quasi, "x"), Err(GroupError::NotAGroup(_))));
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(enumerate_subgroups(&FiniteGroup::cyclic(7)).len(), 2);
        assert_eq!(enumerate_subgroups(&FiniteGroup::symmetric(3)).len(), 6);
        assert_eq!(enumerate_subgroups(&FiniteGroup::quaternion8()).len(), 6);
        assert_eq!(enumerate_subgroups(&FiniteGroup::symmetric(4)).len(), 30);
    }

    #[test]
    fn ccs_counts_and_labels() {
        let s3 = arc(FiniteGroup::symmetric(3));
        let t = CcsTable::new(&s3);
        assert_eq!(t.labels(), vec!["1:0", "2:0", "3:0", "6:0"]);
        assert_eq!(t.class(1).conjugates.len(), 3);
        assert_eq!(t.class(1).weyl_order, 1);
        assert_eq!(t.class(2).weyl_order, 2);
        let v4 = arc(named_group("V4", 400).unwrap());
        assert_eq!(CcsTable::new(&v4).len(), 5);
        assert_eq!(CcsTable::new(&arc(FiniteGroup::cyclic(12))).len(), 6);
    }

    #[test]
    fn marks_by_coset_counting() {
        let g = FiniteGroup::symmetric(3);
        let whole = Subgroup::whole(&g);
        let one = Subgroup::trivial(&g);
        let c2 = enumerate_subgroups(&g).into_iter().find(|h| h.order() == 2).unwrap();
        assert_eq!(mark(&g, &c2, &c2), 1);
        assert_eq!(mark(&g, &one, &one), 6);
        for k in enumerate_subgroups(&g) {
            assert_eq!(mark(&g, &whole, &k), 1);
        }
    }

    #[test]
    fn double_coset_examples() {
        let g = FiniteGroup::symmetric(3);
        let subs = enumerate_subgroups(&g);
        let c2 = subs.iter().find(|h| h.order() == 2).unwrap();
        let c3 = subs.iter().find(|h| h.order() == 3).unwrap();
        assert_eq!(double_cosets(&g, c2, c3).len(), 1);
        let one = Subgroup::trivial(&g);
        assert_eq!(double_cosets(&g, &one, &one).len(), 6);
        let whole = Subgroup::whole(&g);
        assert_eq!(double_cosets(&g, &whole, &whole).len(), 1);
    }

    #[test]
    fn cyclic_data_examples() {
        let c5 = cyclic_subgroup_data(&FiniteGroup::cyclic(5));
        let got: Vec<(usize, usize, usize)> =
            c5.iter().map(|d| (d.subgroup.order(), d.generator_count, d.index_of_normalizer)).collect();
        assert_eq!(got, vec![(1, 1, 1), (5, 4, 1)]);
        let s3 = cyclic_subgroup_data(&FiniteGroup::symmetric(3));
        let c2 = s3.iter().find(|d| d.subgroup.order() == 2).unwrap();
        assert_eq!((c2.generator_count, c2.index_of_normalizer), (1, 3));
        let c12 = cyclic_subgroup_data(&FiniteGroup::cyclic(12));
        assert_eq!(c12.last().unwrap().generator_count, 4);
    }

    #[test]
    fn quotients() {
        let s3 = arc(FiniteGroup::symmetric(3));
        let c3 = enumerate_subgroups(&s3).into_iter().find(|h| h.order() == 3).unwrap();
        let (q, p) = quotient_group(&s3, &c3).unwrap();
        assert_eq!(q.order(), 2);
        assert!(!p.is_injective());
        let c2 = enumerate_subgroups(&s3).into_iter().find(|h| h.order() == 2).unwrap();
        assert!(matches!(quotient_group(&s3, &c2), Err(GroupError::NotNormal)));
        let (q, _) = quotient_group(&s3, &Subgroup::whole(&s3)).unwrap();
        assert_eq!(q.order(), 1);
        let (q, p) = quotient_group(&s3, &Subgroup::trivial(&s3)).unwrap();
        assert_eq!(q.order(), 6);
        assert!(p.is_injective());
    }

    #[test]
    fn subconjugacy_examples() {
        let s3 = arc(FiniteGroup::symmetric(3));
        let t = CcsTable::new(&s3);
        let o = subconjugacy_order(&t);
        for i in 0..t.len() {
            assert!(o.leq(0, i));
            assert!(o.leq(i, i));
        }
        assert!(o.leq(1, 3));
        assert!(!o.leq(1, 2));
        for i in 0..t.len() {
            for j in 0..i {
                assert!(!o.leq(i, j), "order must refine the canonical numbering");
            }
        }
    }

    #[test]
    fn homomorphism_validation() {
        let c4 = arc(FiniteGroup::cyclic(4));
        let c2 = arc(FiniteGroup::cyclic(2));
        let p = GroupHom::new(Arc::clone(&c4), Arc::clone(&c2), vec![0, 1, 0, 1]).unwrap();
        assert!(!p.is_injective());
        assert!(GroupHom::new(Arc::clone(&c4), Arc::clone(&c2), vec![0, 1, 1, 0]).is_err());
        let i = GroupHom::new(c2, c4, vec![0, 2]).unwrap();
        assert!(i.is_injective());
    }
}
