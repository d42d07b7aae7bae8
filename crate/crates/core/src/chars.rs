//! Character tables of finite groups with exact cyclotomic values: loading and
//! validation, class-function algebra, decomposition into irreducibles,
//! eigenvalue multisets and inflation along quotient maps.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Deserialize;

use crate::arith::cyclo::{CycloInt, CycloRat};
use crate::error::{Error, Result};

/// A table entry as written in a group file: an integer, a power-basis
/// vector, or a sum of roots of unity `zeta_m^k`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum CycloLiteral {
    Int(i64),
    Coeffs { m: u32, coeffs: Vec<i64> },
    Roots { m: u32, roots: Vec<i64> },
}

impl CycloLiteral {
    pub fn to_cyclo(&self) -> Result<CycloInt> {
        match self {
            CycloLiteral::Int(v) => Ok(CycloInt::from_int(*v)),
            CycloLiteral::Coeffs { m: 0, .. } | CycloLiteral::Roots { m: 0, .. } => {
                Err(Error::InvalidArgument("cyclotomic literal with conductor 0".into()))
            }
            CycloLiteral::Coeffs { m, coeffs } => {
                Ok(CycloInt::from_coeffs(*m, coeffs.iter().map(|&c| BigInt::from(c)).collect()))
            }
            CycloLiteral::Roots { m, roots } => Ok(CycloInt::sum_of_roots(*m, roots.iter().copied())),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassFile {
    label: String,
    size: Option<u64>,
    order: u32,
    #[serde(default)]
    power_map: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CharacterFile {
    name: String,
    values: Vec<CycloLiteral>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProjectionFile {
    name: String,
    target: String,
    map: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    id: String,
    order: Option<u64>,
    #[serde(default = "default_true")]
    sizes_trusted: bool,
    classes: Vec<ClassFile>,
    characters: Vec<CharacterFile>,
    #[serde(default)]
    projections: Vec<ProjectionFile>,
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub label: String,
    /// As recorded in the data file. Only meaningful when the table's sizes
    /// are trusted.
    pub size: Option<u64>,
    pub order: u32,
    /// `powers[j]` is the class of `g^j` for `0 <= j < order`.
    pub powers: Vec<usize>,
}

/// A quotient map `G -> G/H` given on conjugacy classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub name: String,
    pub target: String,
    /// Target class label for every source class, in source order.
    pub image: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct GroupTable {
    id: String,
    order: Option<u64>,
    sizes_trusted: bool,
    classes: Vec<ConjugacyClass>,
    irreducibles: Vec<ClassFunction>,
    projections: Vec<Projection>,
}

impl GroupTable {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: TableFile = serde_json::from_str(text)?;
        Self::from_file(file)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let file: TableFile = serde_json::from_str(&text)
            .map_err(|e| Error::Schema { path: path.to_path_buf(), detail: e.to_string() })?;
        Self::from_file(file)
    }

    fn from_file(file: TableFile) -> Result<Self> {
        let id = file.id.clone();
        let bad = |detail: String| Error::MalformedTable { group: id.clone(), detail };
        let k = file.classes.len();
        if k == 0 {
            return Err(bad("no conjugacy classes".into()));
        }
        let index: HashMap<&str, usize> =
            file.classes.iter().enumerate().map(|(i, c)| (c.label.as_str(), i)).collect();
        if index.len() != k {
            return Err(bad("duplicate class label".into()));
        }
        let identities: Vec<usize> = (0..k).filter(|&i| file.classes[i].order == 1).collect();
        if identities != [0] {
            return Err(bad("the identity must be the first class and the only one of order 1".into()));
        }

        let mut explicit: Vec<HashMap<u32, usize>> = Vec::with_capacity(k);
        for c in &file.classes {
            if c.order == 0 {
                return Err(bad(format!("class {} has order 0", c.label)));
            }
            let mut m = HashMap::new();
            for (j, target) in &c.power_map {
                let j: u32 = j.parse().map_err(|_| bad(format!("class {}: power '{j}' is not an integer", c.label)))?;
                let t = *index
                    .get(target.as_str())
                    .ok_or_else(|| bad(format!("class {}: unknown power class {target}", c.label)))?;
                let fixed = match j % c.order {
                    0 => Some(0),
                    1 => Some(index[c.label.as_str()]),
                    _ => None,
                };
                if fixed.is_some_and(|f| f != t) {
                    return Err(bad(format!("class {}: power {j} cannot be {target}", c.label)));
                }
                m.insert(j % c.order, t);
            }
            explicit.push(m);
        }
        let orders: Vec<u32> = file.classes.iter().map(|c| c.order).collect();
        let mut classes = Vec::with_capacity(k);
        for (i, c) in file.classes.iter().enumerate() {
            let mut powers = Vec::with_capacity(c.order as usize);
            for j in 0..c.order {
                powers.push(resolve_power(i, j, &orders, &explicit, &mut Vec::new()).ok_or_else(|| {
                    bad(format!("class {}: power {j} cannot be resolved from the power map", c.label))
                })?);
            }
            classes.push(ConjugacyClass { label: c.label.clone(), size: c.size, order: c.order, powers });
        }

        let mut irreducibles = Vec::with_capacity(file.characters.len());
        for ch in &file.characters {
            if ch.values.len() != k {
                return Err(bad(format!("character {} has {} values for {k} classes", ch.name, ch.values.len())));
            }
            let values = ch.values.iter().map(CycloLiteral::to_cyclo).collect::<Result<Vec<_>>>()?;
            irreducibles.push(ClassFunction { group: id.clone(), name: Some(ch.name.clone()), values });
        }

        let mut projections = Vec::with_capacity(file.projections.len());
        for pr in file.projections {
            let mut image = Vec::with_capacity(k);
            for c in &file.classes {
                let t = pr
                    .map
                    .get(&c.label)
                    .ok_or_else(|| bad(format!("projection {}: class {} is not mapped", pr.name, c.label)))?;
                image.push(t.clone());
            }
            if pr.map.len() != k {
                return Err(bad(format!("projection {}: map names classes outside the table", pr.name)));
            }
            projections.push(Projection { name: pr.name, target: pr.target, image });
        }

        let table = GroupTable {
            id: file.id,
            order: file.order,
            sizes_trusted: file.sizes_trusted,
            classes,
            irreducibles,
            projections,
        };
        table.validate()?;
        Ok(table)
    }

    fn validate(&self) -> Result<()> {
        let bad = |detail: String| Error::MalformedTable { group: self.id.clone(), detail };
        for c in &self.classes {
            for (j, &t) in c.powers.iter().enumerate() {
                let want = c.order / (j as u32).gcd(&c.order);
                if self.classes[t].order != want {
                    return Err(bad(format!(
                        "power map: {}^{j} = {} has order {}, expected {want}",
                        c.label, self.classes[t].label, self.classes[t].order
                    )));
                }
            }
        }
        if self.irreducibles.len() != self.classes.len() {
            return Err(bad(format!(
                "{} characters for {} classes",
                self.irreducibles.len(),
                self.classes.len()
            )));
        }
        for ch in &self.irreducibles {
            match ch.values[0].as_integer() {
                Some(d) if d.is_positive() => {}
                _ => return Err(bad(format!("{}: value at the identity is not a positive integer", ch.label()))),
            }
        }
        if self.sizes_trusted {
            let order = self.order.ok_or_else(|| bad("trusted sizes need a group order".into()))?;
            let mut total = 0u64;
            for c in &self.classes {
                total += c.size.ok_or_else(|| bad(format!("class {} has no size", c.label)))?;
            }
            if total != order {
                return Err(bad(format!("class sizes sum to {total}, group order is {order}")));
            }
            for (a, x) in self.irreducibles.iter().enumerate() {
                for (b, y) in self.irreducibles.iter().enumerate() {
                    let ip = self.inner_product(x, y)?;
                    let want = if a == b { BigRational::one() } else { BigRational::zero() };
                    if ip != want {
                        return Err(bad(format!("orthogonality fails for {} and {}", x.label(), y.label())));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn order(&self) -> Option<u64> {
        self.order
    }

    pub fn sizes_trusted(&self) -> bool {
        self.sizes_trusted
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn projections(&self) -> &[Projection] {
        &self.projections
    }

    pub fn class_index(&self, label: &str) -> Result<usize> {
        self.classes
            .iter()
            .position(|c| c.label == label)
            .ok_or_else(|| Error::Unknown { kind: "class", name: format!("{label} in {}", self.id) })
    }

    pub fn character(&self, name: &str) -> Result<&ClassFunction> {
        self.irreducibles
            .iter()
            .find(|c| c.name.as_deref() == Some(name))
            .ok_or_else(|| Error::Unknown { kind: "character", name: format!("{name} in {}", self.id) })
    }

    pub fn character_index(&self, name: &str) -> Result<usize> {
        self.irreducibles
            .iter()
            .position(|c| c.name.as_deref() == Some(name))
            .ok_or_else(|| Error::Unknown { kind: "character", name: format!("{name} in {}", self.id) })
    }

    pub fn trivial(&self) -> ClassFunction {
        self.constant(1)
    }

    pub fn constant(&self, v: i64) -> ClassFunction {
        ClassFunction {
            group: self.id.clone(),
            name: None,
            values: vec![CycloInt::from_int(v); self.classes.len()],
        }
    }

    /// Class function from one value per class, in table order.
    pub fn class_function(&self, values: Vec<CycloInt>) -> Result<ClassFunction> {
        if values.len() != self.classes.len() {
            return Err(Error::InvalidArgument(format!(
                "{} values for {} classes of {}",
                values.len(),
                self.classes.len(),
                self.id
            )));
        }
        Ok(ClassFunction { group: self.id.clone(), name: None, values })
    }

    /// `sum_k n_k chi_k` over the irreducibles.
    pub fn combination(&self, multiplicities: &[i64]) -> Result<ClassFunction> {
        if multiplicities.len() != self.irreducibles.len() {
            return Err(Error::InvalidArgument(format!(
                "{} multiplicities for {} irreducibles of {}",
                multiplicities.len(),
                self.irreducibles.len(),
                self.id
            )));
        }
        let mut acc = self.constant(0);
        for (chi, &n) in self.irreducibles.iter().zip(multiplicities) {
            if n != 0 {
                acc = acc.add(&chi.scale(n))?;
            }
        }
        Ok(acc)
    }

    /// `(1/|G|) sum_g a(g) conj(b(g))`, weighting each class by its size.
    pub fn inner_product(&self, a: &ClassFunction, b: &ClassFunction) -> Result<BigRational> {
        self.check_member(a)?;
        self.check_member(b)?;
        if !self.sizes_trusted {
            return Err(Error::InvalidArgument(format!(
                "{} has untrusted class sizes; use the linear-solve decomposition",
                self.id
            )));
        }
        let order = self.order.expect("validated");
        let mut acc = CycloInt::from_int(0);
        for ((c, x), y) in self.classes.iter().zip(&a.values).zip(&b.values) {
            acc = acc + CycloInt::from_int(c.size.expect("validated") as i64) * x.clone() * y.conj();
        }
        let total = acc
            .as_integer()
            .ok_or_else(|| Error::NotACharacter { detail: format!("inner product {acc} is irrational") })?;
        Ok(BigRational::new(total, BigInt::from(order)))
    }

    pub fn decompose(&self, chi: &ClassFunction, mode: DecomposeMode) -> Result<Multiplicities> {
        self.check_member(chi)?;
        let values = match mode {
            DecomposeMode::Orthogonality => self
                .irreducibles
                .iter()
                .map(|psi| self.inner_product(chi, psi))
                .collect::<Result<Vec<_>>>()?,
            DecomposeMode::LinearSolve => self.solve(chi)?,
        };
        Ok(Multiplicities { group: self.id.clone(), values })
    }

    /// Solves `sum_k n_k chi_k(c) = chi(c)` for every class `c` by Gaussian
    /// elimination over `Q(zeta_m)`.
    fn solve(&self, chi: &ClassFunction) -> Result<Vec<BigRational>> {
        let k = self.classes.len();
        let n = self.irreducibles.len();
        let mut rows: Vec<Vec<CycloRat>> = (0..k)
            .map(|c| {
                let mut row: Vec<CycloRat> = self.irreducibles.iter().map(|x| x.values[c].to_rat()).collect();
                row.push(chi.values[c].to_rat());
                row
            })
            .collect();
        let singular = || Error::SingularTable { group: self.id.clone() };
        let mut r = 0;
        for col in 0..n {
            let pivot = (r..k).find(|&i| !rows[i][col].is_zero()).ok_or_else(singular)?;
            rows.swap(r, pivot);
            let inv = rows[r][col].inv().ok_or_else(singular)?;
            for j in col..=n {
                rows[r][j] = rows[r][j].clone() * inv.clone();
            }
            for i in 0..k {
                if i == r || rows[i][col].is_zero() {
                    continue;
                }
                let f = rows[i][col].clone();
                for j in col..=n {
                    let t = rows[r][j].clone() * f.clone();
                    rows[i][j] = rows[i][j].clone() - t;
                }
            }
            r += 1;
        }
        for row in rows.iter().skip(n) {
            if !row[n].is_zero() {
                return Err(Error::NotACharacter {
                    detail: format!("class function is outside the span of the irreducibles of {}", self.id),
                });
            }
        }
        rows.iter()
            .take(n)
            .map(|row| {
                row[n].as_scalar().ok_or_else(|| Error::NotACharacter {
                    detail: format!("irrational multiplicity {}", row[n]),
                })
            })
            .collect()
    }

    /// Exponents `k` (mod the element order `r`), with repetition, such that
    /// the eigenvalues of the representation affording `chi` at class `c` are
    /// `zeta_r^k`.
    pub fn eigenvalue_multiset(&self, chi: &ClassFunction, class: usize) -> Result<Vec<u32>> {
        self.check_member(chi)?;
        let c = self.classes.get(class).ok_or_else(|| Error::InvalidArgument(format!("no class {class}")))?;
        let r = c.order;
        let mut out = Vec::new();
        for k in 0..r {
            let mut acc = CycloInt::from_int(0);
            for j in 0..r {
                let v = chi.values[c.powers[j as usize]].clone();
                acc = acc + v * CycloInt::zeta_pow(r, -((k as i64) * (j as i64)));
            }
            let malformed = |detail: String| Error::MalformedTable { group: self.id.clone(), detail };
            let total = acc.as_integer().ok_or_else(|| {
                malformed(format!("{} at {}: multiplicity of zeta_{r}^{k} is irrational", chi.label(), c.label))
            })?;
            let (q, rem) = total.div_rem(&BigInt::from(r));
            if !rem.is_zero() || q.is_negative() {
                return Err(malformed(format!(
                    "{} at {}: multiplicity of zeta_{r}^{k} is {total}/{r}",
                    chi.label(),
                    c.label
                )));
            }
            let q = q.to_usize().ok_or_else(|| malformed("multiplicity overflow".into()))?;
            out.extend(std::iter::repeat(k).take(q));
        }
        Ok(out)
    }

    /// Classes where `chi` takes its degree.
    pub fn kernel_classes(&self, chi: &ClassFunction) -> Result<Vec<String>> {
        self.check_member(chi)?;
        let d = &chi.values[0];
        Ok(self
            .classes
            .iter()
            .zip(&chi.values)
            .filter(|(_, v)| *v == d)
            .map(|(c, _)| c.label.clone())
            .collect())
    }

    pub fn is_faithful(&self, chi: &ClassFunction) -> Result<bool> {
        Ok(self.kernel_classes(chi)?.len() == 1)
    }

    /// The class of `g^j` for `g` in `class`.
    pub fn power(&self, class: usize, j: i64) -> usize {
        let c = &self.classes[class];
        c.powers[j.rem_euclid(c.order as i64) as usize]
    }

    fn check_member(&self, chi: &ClassFunction) -> Result<()> {
        if chi.group != self.id {
            return Err(Error::GroupMismatch { left: chi.group.clone(), right: self.id.clone() });
        }
        if chi.values.len() != self.classes.len() {
            return Err(Error::InvalidArgument(format!("class function has the wrong length for {}", self.id)));
        }
        Ok(())
    }

    pub fn projection(&self, name: &str) -> Result<&Projection> {
        self.projections
            .iter()
            .find(|p| p.name == name)
            .ok_or_else(|| Error::UnknownProjection { from: self.id.clone(), to: name.to_string() })
    }

    /// `chi o pi` for a character `chi` of the quotient.
    pub fn inflate(&self, chi: &ClassFunction, quotient: &GroupTable, projection: &str) -> Result<ClassFunction> {
        let pr = self.projection(projection)?;
        if pr.target != quotient.id {
            return Err(Error::UnknownProjection { from: self.id.clone(), to: quotient.id.clone() });
        }
        quotient.check_member(chi)?;
        let mut values = Vec::with_capacity(self.classes.len());
        for label in &pr.image {
            values.push(chi.values[quotient.class_index(label)?].clone());
        }
        Ok(ClassFunction { group: self.id.clone(), name: None, values })
    }

    /// Source classes mapping to the given quotient class.
    pub fn preimage(&self, projection: &str, class: &str) -> Result<Vec<String>> {
        let pr = self.projection(projection)?;
        Ok(self
            .classes
            .iter()
            .zip(&pr.image)
            .filter(|(_, t)| *t == class)
            .map(|(c, _)| c.label.clone())
            .collect())
    }

    /// Checks that a projection lands in `quotient`, divides element orders
    /// and commutes with the power maps.
    pub fn check_projection(&self, projection: &str, quotient: &GroupTable) -> Result<()> {
        let pr = self.projection(projection)?;
        let bad = |detail: String| Error::MalformedTable { group: self.id.clone(), detail };
        if pr.target != quotient.id {
            return Err(bad(format!("projection {} targets {}, not {}", pr.name, pr.target, quotient.id)));
        }
        let image: Vec<usize> = pr.image.iter().map(|l| quotient.class_index(l)).collect::<Result<_>>()?;
        if image[0] != 0 {
            return Err(bad(format!("projection {} does not send the identity to the identity", pr.name)));
        }
        for (i, c) in self.classes.iter().enumerate() {
            let t = &quotient.classes[image[i]];
            if c.order % t.order != 0 {
                return Err(bad(format!("{}: order of {} does not divide order of {}", pr.name, t.label, c.label)));
            }
            for j in 0..c.order as i64 {
                if image[self.power(i, j)] != quotient.power(image[i], j) {
                    return Err(bad(format!("{}: power map of {} does not commute at j = {j}", pr.name, c.label)));
                }
            }
        }
        Ok(())
    }
}

fn resolve_power(
    class: usize,
    j: u32,
    orders: &[u32],
    explicit: &[HashMap<u32, usize>],
    stack: &mut Vec<(usize, u32)>,
) -> Option<usize> {
    let ord = orders[class];
    let j = j % ord;
    if j == 0 {
        return Some(0);
    }
    if j == 1 {
        return Some(class);
    }
    if let Some(&t) = explicit[class].get(&j) {
        return Some(t);
    }
    if j.gcd(&ord) == 1 {
        // Every table in scope has rational classes.
        return Some(class);
    }
    if stack.contains(&(class, j)) {
        return None;
    }
    stack.push((class, j));
    // g^j = (g^q)^(j/q) for a prime q | j with a recorded q-th power.
    let mut q = 2;
    let mut out = None;
    while q <= j {
        if j % q == 0 && is_small_prime(q) {
            if let Some(&t) = explicit[class].get(&q) {
                out = resolve_power(t, j / q, orders, explicit, stack);
                if out.is_some() {
                    break;
                }
            }
        }
        q += 1;
    }
    stack.pop();
    out
}

fn is_small_prime(q: u32) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecomposeMode {
    /// Inner products against the irreducibles; needs trusted class sizes.
    Orthogonality,
    /// Solve the square system given by the table columns; no sizes needed.
    LinearSolve,
}

/// Exact multiplicities of each irreducible, in table order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplicities {
    pub group: String,
    pub values: Vec<BigRational>,
}

impl Multiplicities {
    /// True when every multiplicity is a nonnegative integer.
    pub fn is_character(&self) -> bool {
        self.values.iter().all(|v| v.is_integer() && !v.is_negative())
    }

    /// Integer multiplicities, or an error naming the first offending entry.
    pub fn to_integers(&self) -> Result<Vec<i64>> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if !v.is_integer() || v.is_negative() {
                    return Err(Error::NotACharacter { detail: format!("multiplicity {v} at position {}", i + 1) });
                }
                v.to_integer().to_i64().ok_or_else(|| Error::NotACharacter { detail: "multiplicity overflow".into() })
            })
            .collect()
    }
}

/// A function on the conjugacy classes of a registered group.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction {
    group: String,
    name: Option<String>,
    values: Vec<CycloInt>,
}

impl ClassFunction {
    pub fn group(&self) -> &str {
        &self.group
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| "<class function>".into())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn values(&self) -> &[CycloInt] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &CycloInt {
        &self.values[class]
    }

    /// Value at the identity class, when it is a rational integer.
    pub fn degree(&self) -> Option<BigInt> {
        self.values[0].as_integer()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&CycloInt, &CycloInt) -> CycloInt) -> Result<Self> {
        if self.group != other.group || self.values.len() != other.values.len() {
            return Err(Error::GroupMismatch { left: self.group.clone(), right: other.group.clone() });
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect();
        Ok(ClassFunction { group: self.group.clone(), name: None, values })
    }

    /// Pointwise product.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() * b.clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, n: i64) -> Self {
        let n = CycloInt::from_int(n);
        ClassFunction {
            group: self.group.clone(),
            name: None,
            values: self.values.iter().map(|v| v.clone() * n.clone()).collect(),
        }
    }

    /// Complex conjugate values.
    pub fn dual(&self) -> Self {
        ClassFunction {
            group: self.group.clone(),
            name: self.name.as_ref().map(|n| format!("dual({n})")),
            values: self.values.iter().map(CycloInt::conj).collect(),
        }
    }

    pub fn is_self_dual(&self) -> bool {
        self.values.iter().all(|v| v.conj() == *v)
    }

    pub fn is_rational(&self) -> bool {
        self.values.iter().all(CycloInt::is_rational)
    }

    /// Integer values, when every value is rational.
    pub fn integer_values(&self) -> Option<Vec<i64>> {
        self.values.iter().map(|v| v.as_integer().and_then(|x| x.to_i64())).collect()
    }

    /// Same values as `other` on every class, ignoring names.
    pub fn same_values(&self, other: &Self) -> bool {
        self.group == other.group && self.values == other.values
    }
}

impl fmt::Display for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", vals.join(", "))
    }
}

/// Formats integer multiplicities as `3*chi5 + chi4` using the table names.
pub fn format_combination(table: &GroupTable, multiplicities: &[i64]) -> String {
    let mut parts = Vec::new();
    for (chi, &n) in table.irreducibles().iter().zip(multiplicities) {
        match n {
            0 => {}
            1 => parts.push(chi.label()),
            n => parts.push(format!("{n}*{}", chi.label())),
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Group tables indexed by id, with projections checked against their targets.
#[derive(Clone, Debug, Default)]
pub struct TableSet {
    tables: BTreeMap<String, GroupTable>,
}

impl TableSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, table: GroupTable) -> Result<()> {
        if self.tables.contains_key(table.id()) {
            return Err(Error::InvalidArgument(format!("duplicate group table {}", table.id())));
        }
        self.tables.insert(table.id().to_string(), table);
        Ok(())
    }

    /// Every `*.json` file of a directory.
    pub fn load_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        if !dir.is_dir() {
            return Err(Error::Schema { path: dir.to_path_buf(), detail: "not a directory".into() });
        }
        let mut paths: Vec<_> = std::fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        let mut set = TableSet::new();
        for p in paths {
            set.insert(GroupTable::load(&p)?)?;
        }
        set.check_projections()?;
        Ok(set)
    }

    /// The tables shipped with the crate.
    pub fn builtin() -> Self {
        let mut set = TableSet::new();
        for text in [BUILTIN_S4, BUILTIN_C2, BUILTIN_T288] {
            set.insert(GroupTable::from_json_str(text).expect("builtin table is valid")).expect("unique ids");
        }
        set.check_projections().expect("builtin projections are valid");
        set
    }

    pub fn check_projections(&self) -> Result<()> {
        for t in self.tables.values() {
            for pr in t.projections() {
                let q = self.get(&pr.target)?;
                t.check_projection(&pr.name, q)?;
            }
        }
        Ok(())
    }

    pub fn get(&self, id: &str) -> Result<&GroupTable> {
        self.tables.get(id).ok_or_else(|| Error::Unknown { kind: "group", name: id.to_string() })
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.tables.keys().map(String::as_str)
    }
}

pub const BUILTIN_S4: &str = include_str!("../../../data/tables/S4.json");
pub const BUILTIN_C2: &str = include_str!("../../../data/tables/C2.json");
pub const BUILTIN_T288: &str = include_str!("../../../data/tables/T288.json");
