//! Finite groups given by Cayley tables, used as the grading index set.

use crate::error::{Error, Result};
use crate::report::VerificationReport;

/// Index of a group element in its [`GroupTable`].
pub type Grade = usize;

/// A finite group as an extensional Cayley table. Construction only checks
/// the table's shape; [`validate_group`] checks the axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    mul: Vec<Vec<Grade>>,
    identity: Grade,
    inv: Vec<Grade>,
}

/// Lookups supported by [`group_query`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupQuery {
    Mul(Grade, Grade),
    Inv(Grade),
    Id,
}

impl GroupTable {
    /// Builds a table from its multiplication and identity; inverses are
    /// derived from the table (`inv[x]` is the first `y` with `x·y = e`, or
    /// `x` itself when none exists, which validation then reports).
    pub fn new(mul: Vec<Vec<Grade>>, identity: Grade) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::shape("/mul", "group must have at least one element"));
        }
        for (i, row) in mul.iter().enumerate() {
            if row.len() != n {
                return Err(Error::shape(
                    format!("/mul/{i}"),
                    format!("row has {} entries, expected {n}", row.len()),
                ));
            }
            if let Some((j, &x)) = row.iter().enumerate().find(|(_, &x)| x >= n) {
                return Err(Error::shape(
                    format!("/mul/{i}/{j}"),
                    format!("entry {x} out of range for order {n}"),
                ));
            }
        }
        if identity >= n {
            return Err(Error::shape("/identity", format!("identity {identity} out of range")));
        }
        let inv = (0..n)
            .map(|x| (0..n).find(|&y| mul[x][y] == identity).unwrap_or(x))
            .collect();
        Ok(GroupTable { mul, identity, inv })
    }

    pub fn trivial() -> Self {
        GroupTable::cyclic(1)
    }

    /// `Z/n` with element `k` standing for `g^k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable::new(mul, 0).expect("cyclic table is well formed")
    }

    /// The symmetric group on three letters; element 0 is the identity and
    /// elements are permutations of `[0, 1, 2]` in lexicographic order.
    pub fn s3() -> Self {
        let perms = s3_permutations();
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
        let mul = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index([a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect();
        GroupTable::new(mul, 0).expect("S3 table is well formed")
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> Grade {
        self.identity
    }

    pub fn mul(&self, p: Grade, q: Grade) -> Grade {
        self.mul[p][q]
    }

    pub fn inv(&self, p: Grade) -> Grade {
        self.inv[p]
    }

    pub fn table(&self) -> &[Vec<Grade>] {
        &self.mul
    }

    pub fn elements(&self) -> std::ops::Range<Grade> {
        0..self.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Checks the inverse table supplied by a file against the derived one.
    pub fn check_inverses(&self, claimed: &[Grade]) -> Result<()> {
        if claimed.len() != self.order() {
            return Err(Error::shape("/inv", "inverse table has wrong length"));
        }
        for (x, &y) in claimed.iter().enumerate() {
            if y >= self.order() || self.mul[x][y] != self.identity {
                return Err(Error::shape(format!("/inv/{x}"), "claimed inverse is wrong"));
            }
        }
        Ok(())
    }
}

pub(crate) fn s3_permutations() -> Vec<[usize; 3]> {
    vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ]
}

/// Exhaustive check of identity, inverse and associativity laws.
pub fn validate_group(t: &GroupTable) -> VerificationReport {
    let mut report = VerificationReport::new();
    let n = t.order();
    let e = t.identity();
    for x in 0..n {
        let label = vec![x.to_string()];
        report.compare("group.identity", &[], label.clone(), &t.mul(e, x), &x);
        report.compare("group.identity", &[], label, &t.mul(x, e), &x);
    }
    for x in 0..n {
        let label = vec![x.to_string()];
        match (0..n).find(|&y| t.mul(x, y) == e && t.mul(y, x) == e) {
            Some(_) => {
                report.compare("group.inverse", &[], label.clone(), &t.mul(x, t.inv(x)), &e);
                report.compare("group.inverse", &[], label, &t.mul(t.inv(x), x), &e);
            }
            None => report.fail(
                "group.inverse",
                &[],
                label,
                format!("no y with {x}*y = y*{x} = {e}"),
                "inverse exists",
            ),
        }
    }
    let mut assoc_ok = true;
    'triples: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let l = t.mul(t.mul(a, b), c);
                let r = t.mul(a, t.mul(b, c));
                if l != r {
                    report.fail(
                        "group.assoc",
                        &[],
                        vec![a.to_string(), b.to_string(), c.to_string()],
                        l.to_string(),
                        r.to_string(),
                    );
                    assoc_ok = false;
                    break 'triples;
                }
            }
        }
    }
    if assoc_ok {
        report.pass("group.assoc", &[], vec![format!("all {} triples", n * n * n)]);
    }
    report
}

/// Table lookups with range checking.
pub fn group_query(t: &GroupTable, q: GroupQuery) -> Result<Grade> {
    let n = t.order();
    let check = |x: Grade| {
        if x < n {
            Ok(x)
        } else {
            Err(Error::IndexOutOfRange { index: x, order: n })
        }
    };
    match q {
        GroupQuery::Mul(a, b) => Ok(t.mul(check(a)?, check(b)?)),
        GroupQuery::Inv(a) => Ok(t.inv(check(a)?)),
        GroupQuery::Id => Ok(t.identity()),
    }
}
