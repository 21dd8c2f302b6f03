use crate::error::{Error, Result};
use crate::grading::{s3_permutations, GroupTable};

/// A finite loop given by its Cayley table, with derived inverse tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopTable {
    mul: Vec<Vec<usize>>,
    identity: usize,
    left_inv: Vec<usize>,
    right_inv: Vec<usize>,
}

impl LoopTable {
    /// Builds a table, checking shape, the Latin-square property and the
    /// identity. Inverses are derived: `left_inv[x]·x = e`, `x·right_inv[x] = e`.
    pub fn new(mul: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::shape("/mul", "loop must have at least one element"));
        }
        for (i, row) in mul.iter().enumerate() {
            if row.len() != n {
                return Err(Error::shape(format!("/mul/{i}"), format!("row has {} entries, expected {n}", row.len())));
            }
            if let Some((j, &x)) = row.iter().enumerate().find(|(_, &x)| x >= n) {
                return Err(Error::shape(format!("/mul/{i}/{j}"), format!("entry {x} out of range")));
            }
        }
        if identity >= n {
            return Err(Error::shape("/identity", format!("identity {identity} out of range")));
        }
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                if std::mem::replace(&mut row_seen[mul[i][j]], true) {
                    return Err(Error::shape(format!("/mul/{i}"), "row is not a permutation"));
                }
                if std::mem::replace(&mut col_seen[mul[j][i]], true) {
                    return Err(Error::shape(format!("/mul/*/{i}"), "column is not a permutation"));
                }
            }
        }
        for (x, row) in mul.iter().enumerate() {
            if mul[identity][x] != x || row[identity] != x {
                return Err(Error::shape("/identity", format!("not a two-sided identity at {x}")));
            }
        }
        let left_inv = (0..n)
            .map(|x| (0..n).find(|&y| mul[y][x] == identity).expect("Latin square"))
            .collect();
        let right_inv = (0..n)
            .map(|x| (0..n).find(|&y| mul[x][y] == identity).expect("Latin square"))
            .collect();
        Ok(LoopTable {
            mul,
            identity,
            left_inv,
            right_inv,
        })
    }

    pub fn from_group(g: &GroupTable) -> Self {
        LoopTable::new(g.table().to_vec(), g.identity()).expect("a group is a loop")
    }

    /// Checks inverse tables supplied alongside a table against the derived ones.
    pub fn check_inverses(&self, left: &[usize], right: &[usize]) -> Result<()> {
        if left != self.left_inv.as_slice() {
            return Err(Error::shape("/left_inv", "does not match the table"));
        }
        if right != self.right_inv.as_slice() {
            return Err(Error::shape("/right_inv", "does not match the table"));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x][y]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn left_inv(&self, x: usize) -> usize {
        self.left_inv[x]
    }

    pub fn right_inv(&self, x: usize) -> usize {
        self.right_inv[x]
    }

    /// Two-sided inverses with `x⁻¹(xy) = y` and `(yx)x⁻¹ = y`; the error
    /// carries the first failing pair.
    pub fn check_inverse_property(&self) -> Result<()> {
        let n = self.order();
        for x in 0..n {
            if self.left_inv[x] != self.right_inv[x] {
                return Err(Error::NotIpLoop {
                    x,
                    y: x,
                    law: "two-sided inverse",
                });
            }
        }
        for x in 0..n {
            let xi = self.left_inv[x];
            for y in 0..n {
                if self.mul(xi, self.mul(x, y)) != y {
                    return Err(Error::NotIpLoop { x, y, law: "x⁻¹(xy) = y" });
                }
                if self.mul(self.mul(y, x), xi) != y {
                    return Err(Error::NotIpLoop { x, y, law: "(yx)x⁻¹ = y" });
                }
            }
        }
        Ok(())
    }

    /// First triple with `(xy)z ≠ x(yz)`.
    pub fn non_associative_triple(&self) -> Option<(usize, usize, usize)> {
        let n = self.order();
        (0..n)
            .flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))))
            .find(|&(x, y, z)| self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)))
    }

    pub fn is_associative(&self) -> bool {
        self.non_associative_triple().is_none()
    }

    /// First triple violating `z(x(zy)) = ((zx)z)y`.
    pub fn moufang_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.order();
        let m = |a, b| self.mul(a, b);
        (0..n)
            .flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))))
            .find(|&(x, y, z)| m(z, m(x, m(z, y))) != m(m(m(z, x), z), y))
    }

    /// The smallest non-associative Moufang loop, `M(S₃, 2)`. Element `g + 6i`
    /// stands for `(g, i)` with `g` a permutation index from
    /// [`GroupTable::s3`], multiplied by
    /// `(g,0)(h,0) = (gh,0)`, `(g,0)(h,1) = (hg,1)`,
    /// `(g,1)(h,0) = (gh⁻¹,1)`, `(g,1)(h,1) = (h⁻¹g,0)`.
    pub fn moufang12() -> Self {
        let s3 = GroupTable::s3();
        debug_assert_eq!(s3_permutations()[0], [0, 1, 2]);
        let m = |a, b| s3.mul(a, b);
        let inv = |a| s3.inv(a);
        let mul = (0..12)
            .map(|a| {
                (0..12)
                    .map(|b| {
                        let (g, i) = (a % 6, a / 6);
                        let (h, j) = (b % 6, b / 6);
                        match (i, j) {
                            (0, 0) => m(g, h),
                            (0, 1) => m(h, g) + 6,
                            (1, 0) => m(g, inv(h)) + 6,
                            _ => m(inv(h), g),
                        }
                    })
                    .collect()
            })
            .collect();
        let l = LoopTable::new(mul, 0).expect("M(S3,2) is a loop");
        debug_assert!(l.check_inverse_property().is_ok());
        debug_assert!(l.moufang_violation().is_none());
        l
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moufang12_is_a_nonassociative_moufang_loop() {
        let l = LoopTable::moufang12();
        assert_eq!(l.order(), 12);
        assert!(l.check_inverse_property().is_ok());
        assert_eq!(l.moufang_violation(), None);
        // the other three Moufang identities, brute force
        let m = |a, b| l.mul(a, b);
        for x in 0..12 {
            for y in 0..12 {
                for z in 0..12 {
                    assert_eq!(m(m(m(x, z), y), z), m(x, m(z, m(y, z))));
                    assert_eq!(m(m(z, x), m(y, z)), m(m(z, m(x, y)), z));
                    assert_eq!(m(m(z, x), m(y, z)), m(z, m(m(x, y), z)));
                }
            }
        }
        assert!(l.non_associative_triple().is_some());
    }

    #[test]
    fn group_is_associative_ip_loop() {
        let l = LoopTable::from_group(&GroupTable::s3());
        assert!(l.check_inverse_property().is_ok());
        assert!(l.is_associative());
    }

    #[test]
    fn latin_square_without_inverse_property() {
        // a loop of order 5 whose left and right inverses differ
        let mul = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let l = LoopTable::new(mul, 0).unwrap();
        assert!(matches!(l.check_inverse_property(), Err(Error::NotIpLoop { .. })));
    }

    #[test]
    fn rejects_non_latin() {
        assert!(LoopTable::new(vec![vec![0, 1], vec![1, 1]], 0).is_err());
    }
}
