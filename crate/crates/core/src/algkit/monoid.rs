use std::fmt::Write as _;
use std::ops::Deref;

use crate::report::{Law, LawReport};
use crate::{Error, Result};

/// A finite monoid given by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinMonoid {
    pub name: String,
    pub elements: Vec<String>,
    pub unit: usize,
    table: Vec<usize>,
}

impl FinMonoid {
    /// `table[i * n + j]` is `elements[i] * elements[j]`. The unit is found
    /// by search; associativity is checked exhaustively.
    pub fn new(name: impl Into<String>, elements: Vec<String>, table: Vec<usize>) -> Result<Self> {
        let name = name.into();
        let n = elements.len();
        if n == 0 {
            return Err(Error::Shape(format!("monoid `{name}` has no elements")));
        }
        if table.len() != n * n || table.iter().any(|&x| x >= n) {
            return Err(Error::Shape(format!(
                "multiplication table of `{name}` is not {n} x {n}"
            )));
        }
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(Error::Duplicate(format!("element `{e}` in `{name}`")));
            }
        }
        let unit = (0..n)
            .find(|&u| (0..n).all(|x| table[u * n + x] == x && table[x * n + u] == x))
            .ok_or_else(|| Error::Law(format!("`{name}` has no unit")))?;
        let m = Self {
            name,
            elements,
            unit,
            table,
        };
        if let Some(v) = m.check().first() {
            return Err(Error::Law(format!(
                "`{}` violates {:?} at ({})",
                m.name,
                v.law,
                v.witness.join(", ")
            )));
        }
        Ok(m)
    }

    /// From a closure on indices.
    pub fn from_fn(
        name: impl Into<String>,
        elements: Vec<String>,
        mult: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = elements.len();
        let table = (0..n * n).map(|k| mult(k / n, k % n)).collect();
        Self::new(name, elements, table)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn element(&self, id: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == id)
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// Unit laws and associativity on all triples.
    pub fn check(&self) -> LawReport {
        let n = self.order();
        let mut report = LawReport::new();
        for x in 0..n {
            if self.mul(self.unit, x) != x || self.mul(x, self.unit) != x {
                report.push(Law::MonoidUnit, [self.elements[x].as_str()]);
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        report.push(
                            Law::Associativity,
                            [&self.elements[a], &self.elements[b], &self.elements[c]],
                        );
                    }
                }
            }
        }
        report
    }

    /// Two-sided inverse of `x`, if any.
    pub fn inverse(&self, x: usize) -> Option<usize> {
        (0..self.order()).find(|&y| self.mul(x, y) == self.unit && self.mul(y, x) == self.unit)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `(x, x^2, ...)` up to the first repeat: `(index, period)` of the
    /// cyclic submonoid generated by `x`.
    pub fn power_profile(&self, x: usize) -> (usize, usize) {
        let mut seen = vec![self.unit];
        let mut cur = x;
        loop {
            if let Some(i) = seen.iter().position(|&y| y == cur) {
                return (i, seen.len() - i);
            }
            seen.push(cur);
            cur = self.mul(cur, x);
        }
    }

    /// Componentwise product with elements `(a,x)`.
    pub fn direct_product(&self, other: &FinMonoid) -> Result<FinMonoid> {
        let m = other.order();
        let elements = self
            .elements
            .iter()
            .flat_map(|a| other.elements.iter().map(move |x| format!("({a},{x})")))
            .collect();
        FinMonoid::from_fn(format!("{}x{}", self.name, other.name), elements, |p, q| {
            self.mul(p / m, q / m) * m + other.mul(p % m, q % m)
        })
    }

    /// Reads the text format: an `elements:` header line followed by one row
    /// per element. `#` starts a comment; a `name:` line is optional.
    pub fn parse(text: &str) -> Result<FinMonoid> {
        let mut name = String::from("monoid");
        let mut elements: Option<Vec<String>> = None;
        let mut rows: Vec<Vec<String>> = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("name:") {
                name = rest.trim().to_string();
            } else if let Some(rest) = line.strip_prefix("elements:") {
                elements = Some(rest.split_whitespace().map(str::to_string).collect());
            } else if elements.is_some() {
                rows.push(line.split_whitespace().map(str::to_string).collect());
            } else {
                return Err(Error::Shape(format!("line {}: table row before `elements:`", no + 1)));
            }
        }
        let elements = elements.ok_or_else(|| Error::Shape("missing `elements:` header".into()))?;
        let n = elements.len();
        if rows.len() != n {
            return Err(Error::Shape(format!("expected {n} table rows, found {}", rows.len())));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            for e in row {
                let k = elements
                    .iter()
                    .position(|x| x == e)
                    .ok_or_else(|| Error::Dangling(format!("`{e}` in row {}", i + 1)))?;
                table.push(k);
            }
        }
        FinMonoid::new(name, elements, table)
    }

    /// Writes the text format read by [`FinMonoid::parse`].
    pub fn to_text(&self) -> String {
        let n = self.order();
        let mut out = format!("name: {}\nelements: {}\n", self.name, self.elements.join(" "));
        for a in 0..n {
            let row: Vec<&str> = (0..n).map(|b| self.elements[self.mul(a, b)].as_str()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }
}

/// A finite monoid in which every element is invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinGroup {
    monoid: FinMonoid,
    inverse: Vec<usize>,
}

impl FinGroup {
    pub fn new(monoid: FinMonoid) -> Result<Self> {
        let mut inverse = Vec::with_capacity(monoid.order());
        for x in 0..monoid.order() {
            match monoid.inverse(x) {
                Some(y) => inverse.push(y),
                None => {
                    return Err(Error::Law(format!(
                        "`{}` is not a group: `{}` has no inverse",
                        monoid.name, monoid.elements[x]
                    )))
                }
            }
        }
        Ok(Self { monoid, inverse })
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn monoid(&self) -> &FinMonoid {
        &self.monoid
    }

    /// Inverse laws on every element.
    pub fn check(&self) -> LawReport {
        let mut report = self.monoid.check();
        for x in 0..self.order() {
            let y = self.inverse[x];
            if self.mul(x, y) != self.unit || self.mul(y, x) != self.unit {
                report.push(Law::GroupInverse, [self.elements[x].as_str()]);
            }
        }
        report
    }

    pub fn parse(text: &str) -> Result<FinGroup> {
        FinGroup::new(FinMonoid::parse(text)?)
    }
}

impl Deref for FinGroup {
    type Target = FinMonoid;

    fn deref(&self) -> &FinMonoid {
        &self.monoid
    }
}
