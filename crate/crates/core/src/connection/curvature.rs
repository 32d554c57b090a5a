//! Curvature and its behavior under the heap operation.
//!
//! Writing `∇ = Σ_i ε_i ∇^{(i)}` with `ε = (+1, -1, +1)` and expanding
//! `∇_u∇_v - (-1)^{ũṽ}∇_v∇_u` bilinearly gives `Σ_{i,j} ε_i ε_j [∇^{(i)}_u, ∇^{(j)}_v]`
//! where the mixed commutator carries the Koszul sign of `u, v`. The diagonal
//! terms give `R_i + ∇^{(i)}_{[u,v]}`; combined with `-∇_{[u,v]}` they leave
//! `R_1 + R_2 + R_3 + 2∇^{(2)}_{[u,v]}`. The off-diagonal weights are
//! `ε_i ε_j = (-1)^{i+j}`.
//!
//! [`derive_curvature_convention`] reproduces this choice by brute force over
//! all candidate conventions, and [`CurvatureConvention::FROZEN`] records it.

use std::fmt;

use super::{Connection, CurvatureTensor};
use crate::algebroid::{standard, Algebroid, Section};
use crate::error::{Error, Result};
use crate::laws::LawReport;
use crate::superalgebra::{Coefficient, SuperScalar};
use crate::tensor::{Tensor12, Tensor13};

/// Sign attached to the off-diagonal term `(i, j)`, `i != j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossSign {
    /// `(-1)^{i+j}`
    SumExponent,
    /// `(-1)^{i·j}`
    ProductExponent,
}

impl CrossSign {
    pub fn sign(self, i: usize, j: usize) -> i32 {
        let e = match self {
            CrossSign::SumExponent => i + j,
            CrossSign::ProductExponent => i * j,
        };
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Whether `[A_u, B_v] = A_u B_v ∓ B_v A_u` uses the Koszul sign of `u, v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CommutatorGrading {
    Graded,
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CurvatureConvention {
    pub cross_sign: CrossSign,
    pub grading: CommutatorGrading,
}

impl CurvatureConvention {
    pub const FROZEN: CurvatureConvention = CurvatureConvention {
        cross_sign: CrossSign::SumExponent,
        grading: CommutatorGrading::Graded,
    };

    pub const CANDIDATES: [CurvatureConvention; 4] = [
        CurvatureConvention {
            cross_sign: CrossSign::SumExponent,
            grading: CommutatorGrading::Graded,
        },
        CurvatureConvention {
            cross_sign: CrossSign::SumExponent,
            grading: CommutatorGrading::Plain,
        },
        CurvatureConvention {
            cross_sign: CrossSign::ProductExponent,
            grading: CommutatorGrading::Graded,
        },
        CurvatureConvention {
            cross_sign: CrossSign::ProductExponent,
            grading: CommutatorGrading::Plain,
        },
    ];
}

impl fmt::Display for CurvatureConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.cross_sign {
            CrossSign::SumExponent => "(-1)^(i+j)",
            CrossSign::ProductExponent => "(-1)^(i*j)",
        };
        let comm = match self.grading {
            CommutatorGrading::Graded => "[A_u,B_v] = A_u B_v - (-1)^(|u||v|) B_v A_u",
            CommutatorGrading::Plain => "[A_u,B_v] = A_u B_v - B_v A_u",
        };
        write!(f, "cross sign {sign}, {comm}")
    }
}

/// `R_{abc}{}^d` from `∇_a∇_b e_c - (-1)^{ãb̃} ∇_b∇_a e_c - ∇_{[e_a,e_b]} e_c`.
pub fn curvature(alg: &Algebroid, conn: &Connection) -> Result<CurvatureTensor> {
    alg.require_bracket("curvature")?;
    let bundle = alg.bundle();
    let n = bundle.rank();
    let basis: Vec<Section> = (0..n).map(|a| Section::basis(bundle, a)).collect();
    // ∇_{e_a} e_c, reused across (a, b).
    let first: Vec<Vec<Section>> = (0..n)
        .map(|a| (0..n).map(|c| conn.nabla(alg, &basis[a], &basis[c])).collect())
        .collect::<Result<_>>()?;
    let mut r = Tensor13::zero(bundle);
    for a in 0..n {
        for b in 0..n {
            let s = bundle.parity(a).koszul(bundle.parity(b));
            let br = alg.basis_bracket(a, b)?;
            for c in 0..n {
                let ab = conn.nabla(alg, &basis[a], &first[b][c])?;
                let ba = conn.nabla(alg, &basis[b], &first[a][c])?;
                let slot = ab
                    .try_sub(&ba.signed(s))?
                    .try_sub(&conn.nabla(alg, &br, &basis[c])?)?;
                r.set_slot(a, b, c, &slot);
            }
        }
    }
    Ok(r)
}

pub fn is_flat(alg: &Algebroid, conn: &Connection) -> Result<bool> {
    Ok(curvature(alg, conn)?.is_zero())
}

/// `R(u,v)w` from the defining formula, over homogeneous parts of `u, v`.
pub fn curvature_direct(
    alg: &Algebroid,
    conn: &Connection,
    u: &Section,
    v: &Section,
    w: &Section,
) -> Result<Section> {
    alg.require_bracket("curvature")?;
    let mut out = Section::zero(alg.bundle());
    for (pu, uh) in u.homogeneous_parts() {
        for (pv, vh) in v.homogeneous_parts() {
            let s = pu.koszul(pv);
            let uv = conn.nabla(alg, &uh, &conn.nabla(alg, &vh, w)?)?;
            let vu = conn.nabla(alg, &vh, &conn.nabla(alg, &uh, w)?)?;
            let br = conn.nabla(alg, &alg.bracket(&uh, &vh)?, w)?;
            out = out.try_add(&uv.try_sub(&vu.signed(s))?.try_sub(&br)?)?;
        }
    }
    Ok(out)
}

/// `[A_u, B_v] w` for homogeneous `u, v`.
pub fn mixed_commutator(
    alg: &Algebroid,
    a: &Connection,
    b: &Connection,
    u: &Section,
    v: &Section,
    w: &Section,
    grading: CommutatorGrading,
) -> Result<Section> {
    let pu = u.parity().ok_or(Error::Inhomogeneous("section"))?;
    let pv = v.parity().ok_or(Error::Inhomogeneous("section"))?;
    let s = match grading {
        CommutatorGrading::Graded => pu.koszul(pv),
        CommutatorGrading::Plain => 1,
    };
    let ab = a.nabla(alg, u, &b.nabla(alg, v, w)?)?;
    let ba = b.nabla(alg, v, &a.nabla(alg, u, w)?)?;
    ab.try_sub(&ba.signed(s))
}

/// `R₁ + R₂ + R₃ + 2∇²_{[u,v]}w + Σ_{i≠j} s(i,j) [∇ⁱ_u, ∇ʲ_v] w` on basis triples.
pub fn curvature_heap_rhs(
    alg: &Algebroid,
    conns: [&Connection; 3],
    convention: CurvatureConvention,
) -> Result<Tensor13> {
    let bundle = alg.bundle();
    let n = bundle.rank();
    let mut rhs = curvature(alg, conns[0])?
        .try_add(&curvature(alg, conns[1])?)?
        .try_add(&curvature(alg, conns[2])?)?;
    let basis: Vec<Section> = (0..n).map(|a| Section::basis(bundle, a)).collect();
    for a in 0..n {
        for b in 0..n {
            let br = alg.basis_bracket(a, b)?;
            for c in 0..n {
                let mut slot = rhs
                    .slot(a, b, c)
                    .try_add(&conns[1].nabla(alg, &br, &basis[c])?.left_mul(&two(alg)))?;
                for i in 0..3 {
                    for j in 0..3 {
                        if i == j {
                            continue;
                        }
                        let m = mixed_commutator(
                            alg,
                            conns[i],
                            conns[j],
                            &basis[a],
                            &basis[b],
                            &basis[c],
                            convention.grading,
                        )?;
                        slot = slot.try_add(&m.signed(convention.cross_sign.sign(i + 1, j + 1)))?;
                    }
                }
                rhs.set_slot(a, b, c, &slot);
            }
        }
    }
    Ok(rhs)
}

fn two(alg: &Algebroid) -> SuperScalar {
    SuperScalar::integer(alg.ring(), 2)
}

/// `3R + 2∇_{[u,v]}w - 2[∇_u, ∇_v]w = R` on basis triples.
pub fn degenerate_curvature_identity(alg: &Algebroid, conn: &Connection) -> Result<bool> {
    let bundle = alg.bundle();
    let n = bundle.rank();
    let r = curvature(alg, conn)?;
    let basis: Vec<Section> = (0..n).map(|a| Section::basis(bundle, a)).collect();
    for a in 0..n {
        for b in 0..n {
            let br = alg.basis_bracket(a, b)?;
            for c in 0..n {
                let comm = mixed_commutator(
                    alg,
                    conn,
                    conn,
                    &basis[a],
                    &basis[b],
                    &basis[c],
                    CommutatorGrading::Graded,
                )?;
                let lhs = r
                    .slot(a, b, c)
                    .left_mul(&SuperScalar::integer(alg.ring(), 3))
                    .try_add(&conn.nabla(alg, &br, &basis[c])?.left_mul(&two(alg)))?
                    .try_sub(&comm.left_mul(&two(alg)))?;
                if lhs != r.slot(a, b, c) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// For each candidate convention, the number of triples on which the
/// right-hand side differs from the curvature of the heap.
pub fn derive_curvature_convention(
    alg: &Algebroid,
    triples: &[[Connection; 3]],
) -> Result<Vec<(CurvatureConvention, usize)>> {
    let lhs: Vec<Tensor13> = triples
        .iter()
        .map(|[c1, c2, c3]| curvature(alg, &Connection::heap(c1, c2, c3)?))
        .collect::<Result<_>>()?;
    CurvatureConvention::CANDIDATES
        .iter()
        .map(|&conv| {
            let mut misses = 0;
            for (t, l) in triples.iter().zip(&lhs) {
                if curvature_heap_rhs(alg, [&t[0], &t[1], &t[2]], conv)? != *l {
                    misses += 1;
                }
            }
            Ok((conv, misses))
        })
        .collect()
}

/// The curvature formula for triple products under the frozen convention,
/// plus the degenerate check with all three connections equal to `c1`.
pub fn verify_curvature_formula(
    alg: &Algebroid,
    c1: &Connection,
    c2: &Connection,
    c3: &Connection,
) -> Result<Vec<LawReport>> {
    let lhs = curvature(alg, &Connection::heap(c1, c2, c3)?)?;
    let rhs = curvature_heap_rhs(alg, [c1, c2, c3], CurvatureConvention::FROZEN)?;
    let witness = || vec![c1.to_string(), c2.to_string(), c3.to_string()];
    let degenerate_rhs = curvature_heap_rhs(alg, [c1, c1, c1], CurvatureConvention::FROZEN)?;
    let degenerate = degenerate_rhs == curvature(alg, c1)? && degenerate_curvature_identity(alg, c1)?;
    Ok(vec![
        LawReport::check("curvature of triple product", lhs == rhs, || {
            (witness(), "R[1,2,3] != R1+R2+R3 + 2 nabla2_[u,v] + cross terms".to_owned())
        }),
        LawReport::check("curvature degenerate identity R = 3R - 2R", degenerate, || {
            (vec![c1.to_string()], "3R + 2 nabla_[u,v] - 2 [nabla_u, nabla_v] != R".to_owned())
        }),
    ])
}

/// The nilpotent pair on a zero-anchored rank-2 bundle over a point:
/// `∇¹ = (X, 0)`, `∇² = 0`, `∇³ = (0, Y)` with `X e₂ = e₁`, `Y e₁ = e₂`.
pub fn flat_witness() -> (Algebroid, [Connection; 3]) {
    let alg = standard::point_rank2();
    let bundle = alg.bundle().clone();
    let one = SuperScalar::one(alg.ring());
    let mut x = Tensor12::zero(&bundle);
    x.set(0, 1, 0, one.clone());
    let mut y = Tensor12::zero(&bundle);
    y.set(1, 0, 1, one);
    let conns = [
        Connection::new(x).expect("even data"),
        Connection::trivial(&bundle),
        Connection::new(y).expect("even data"),
    ];
    (alg, conns)
}

/// Each input of [`flat_witness`] is flat, but the heap has
/// `R(e₁,e₂) = [X, Y] ≠ 0`. The matrix commutator is computed independently
/// as a product of integer matrices.
pub fn verify_flat_non_closure() -> Result<(Vec<LawReport>, CurvatureTensor)> {
    let (alg, [c1, c2, c3]) = flat_witness();
    let mut out = Vec::new();
    for (name, c) in [("nabla1", &c1), ("nabla2", &c2), ("nabla3", &c3)] {
        out.push(LawReport::check(format!("{name} is flat"), is_flat(&alg, c)?, || {
            (vec![c.to_string()], "nonzero curvature".to_owned())
        }));
    }
    let heap = Connection::heap(&c1, &c2, &c3)?;
    let r = curvature(&alg, &heap)?;
    // M_a[c][b] = Γ_ab^c for the operator ∇_{e_a}.
    let matrix = |c: &Connection, a: usize| -> [[i64; 2]; 2] {
        let mut m = [[0; 2]; 2];
        for (row, line) in m.iter_mut().enumerate() {
            for (col, entry) in line.iter_mut().enumerate() {
                let v = c.gamma().get(a, col, row).as_constant().expect("constant");
                *entry = v.to_integer().try_into().expect("small");
            }
        }
        m
    };
    let mul = |p: [[i64; 2]; 2], q: [[i64; 2]; 2]| {
        let mut m = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = (0..2).map(|k| p[i][k] * q[k][j]).sum();
            }
        }
        m
    };
    let (x, y) = (matrix(&heap, 0), matrix(&heap, 1));
    let (xy, yx) = (mul(x, y), mul(y, x));
    let mut matches = true;
    let mut commutator_nonzero = false;
    for d in 0..2 {
        for b in 0..2 {
            let expected = xy[d][b] - yx[d][b];
            commutator_nonzero |= expected != 0;
            let got = r.get(0, 1, b, d).as_constant().expect("constant");
            matches &= got == Coefficient::from_integer(expected.into());
        }
    }
    out.push(LawReport::check("heap curvature R(e1,e2) = [X,Y]", matches, || {
        (vec![heap.to_string()], "curvature differs from matrix commutator".to_owned())
    }));
    out.push(LawReport::check(
        "heap of flat connections is not flat",
        commutator_nonzero && !r.is_zero(),
        || (vec![heap.to_string()], "heap curvature vanished".to_owned()),
    ));
    Ok((out, r))
}
