#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};

/// Basis element of the circle algebra: `ONE` has quantum degree +1, `X` has -1.
pub type Label = usize;
pub const ONE: Label = 0;
pub const X: Label = 1;

pub fn label_degree(l: Label) -> i32 {
    if l == ONE {
        1
    } else {
        -1
    }
}

type Vec2 = [i64; 2];
type Tensor2 = [[i64; 2]; 2];

/// A commutative Frobenius algebra of rank two on an ordered basis
/// `(e0, e1)`, given by its multiplication and comultiplication tables.
/// Usually the basis is `(1, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusAlgebra {
    /// `mult[a][b]` = coefficients of `e_a * e_b`.
    mult: [[Vec2; 2]; 2],
    /// `comult[a][b][c]` = coefficient of `e_b ⊗ e_c` in `Δ(e_a)`.
    comult: [Tensor2; 2],
    /// The unit is `unit.0 / unit.1`.
    unit: (Vec2, i64),
    graded: bool,
}

impl FrobeniusAlgebra {
    /// Checks unit, commutativity, associativity, cocommutativity,
    /// coassociativity and the Frobenius relation on all basis elements, and
    /// for `graded` algebras that both maps have quantum degree -1.
    pub fn new(mult: [[Vec2; 2]; 2], comult: [Tensor2; 2], graded: bool) -> Result<Self> {
        Self::with_unit(mult, comult, ([1, 0], 1), graded)
    }

    /// As [`FrobeniusAlgebra::new`] for a basis not containing the unit,
    /// which is `unit.0 / unit.1`. Graded algebras must use `(1, x)`.
    pub fn with_unit(mult: [[Vec2; 2]; 2], comult: [Tensor2; 2], unit: (Vec2, i64), graded: bool) -> Result<Self> {
        if unit.1 == 0 || (graded && unit != ([1, 0], 1)) {
            return Err(Error::Frobenius("bad unit".into()));
        }
        let alg = FrobeniusAlgebra { mult, comult, unit, graded };
        alg.verify()?;
        Ok(alg)
    }

    /// `x^2 = 0`, `Δ(1) = 1⊗x + x⊗1`, `Δ(x) = x⊗x`.
    pub fn khovanov() -> Self {
        Self::new([[[1, 0], [0, 1]], [[0, 1], [0, 0]]], [[[0, 1], [1, 0]], [[0, 0], [0, 1]]], true)
            .expect("Khovanov algebra")
    }

    /// `x^2 = 1`, `Δ(1) = 1⊗x + x⊗1`, `Δ(x) = x⊗x + 1⊗1`.
    pub fn lee() -> Self {
        Self::new([[[1, 0], [0, 1]], [[0, 1], [1, 0]]], [[[0, 1], [1, 0]], [[1, 0], [0, 1]]], false)
            .expect("Lee algebra")
    }

    /// The Lee algebra in the idempotent basis `a = 1 + x`, `b = 1 - x`:
    /// `a² = 2a`, `b² = 2b`, `ab = 0`, `Δ(a) = a⊗a`, `Δ(b) = -b⊗b`, and
    /// `1 = (a + b) / 2`. Isomorphic to [`FrobeniusAlgebra::lee`] over the
    /// rationals, with much sparser cube differentials.
    pub fn lee_idempotent() -> Self {
        Self::with_unit([[[2, 0], [0, 0]], [[0, 0], [0, 2]]], [[[1, 0], [0, 0]], [[0, 0], [0, -1]]], ([1, 1], 2), false)
            .expect("Lee algebra, idempotent basis")
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn mult(&self, a: Label, b: Label) -> Vec2 {
        self.mult[a][b]
    }

    pub fn comult(&self, a: Label) -> Tensor2 {
        self.comult[a]
    }

    fn mul_vec(&self, u: Vec2, v: Vec2) -> Vec2 {
        let mut out = [0; 2];
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    out[c] += u[a] * v[b] * self.mult[a][b][c];
                }
            }
        }
        out
    }

    fn verify(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::Frobenius(m.to_string()));
        let e = |a: Label| -> Vec2 {
            let mut v = [0; 2];
            v[a] = 1;
            v
        };
        for a in 0..2 {
            if self.mul_vec(self.unit.0, e(a)) != e(a).map(|v| v * self.unit.1) {
                return fail("1 is not a unit");
            }
            for b in 0..2 {
                if self.mult[a][b] != self.mult[b][a] {
                    return fail("multiplication is not commutative");
                }
                if (0..2).any(|i| (0..2).any(|j| self.comult[a][i][j] != self.comult[a][j][i])) {
                    return fail("comultiplication is not cocommutative");
                }
                for c in 0..2 {
                    let l = self.mul_vec(self.mult[a][b], e(c));
                    let r = self.mul_vec(e(a), self.mult[b][c]);
                    if l != r {
                        return fail("multiplication is not associative");
                    }
                }
            }
            // coassociativity: (Δ ⊗ id)Δ(a) = (id ⊗ Δ)Δ(a)
            let mut left = [[[0i64; 2]; 2]; 2];
            let mut right = [[[0i64; 2]; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    let w = self.comult[a][i][j];
                    for p in 0..2 {
                        for q in 0..2 {
                            left[p][q][j] += w * self.comult[i][p][q];
                            right[i][p][q] += w * self.comult[j][p][q];
                        }
                    }
                }
            }
            if left != right {
                return fail("comultiplication is not coassociative");
            }
            // Frobenius: Δ(a b) = (m ⊗ id)(a ⊗ Δ(b))
            for b in 0..2 {
                let ab = self.mult[a][b];
                let mut lhs = [[0i64; 2]; 2];
                for (c, &w) in ab.iter().enumerate() {
                    for p in 0..2 {
                        for q in 0..2 {
                            lhs[p][q] += w * self.comult[c][p][q];
                        }
                    }
                }
                let mut rhs = [[0i64; 2]; 2];
                for i in 0..2 {
                    for j in 0..2 {
                        let w = self.comult[b][i][j];
                        for p in 0..2 {
                            rhs[p][j] += w * self.mult[a][i][p];
                        }
                    }
                }
                if lhs != rhs {
                    return fail("Frobenius relation fails");
                }
            }
        }
        if self.graded {
            for a in 0..2 {
                for b in 0..2 {
                    for c in 0..2 {
                        let deg = label_degree(a) + label_degree(b) - 1;
                        if self.mult[a][b][c] != 0 && label_degree(c) != deg {
                            return fail("multiplication does not have degree -1");
                        }
                        if self.comult[a][b][c] != 0 && label_degree(b) + label_degree(c) != label_degree(a) - 1 {
                            return fail("comultiplication does not have degree -1");
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
