use super::{Connection, TorsionTensor};
use crate::algebroid::{Algebroid, Section};
use crate::error::{Error, Result};
use crate::laws::LawReport;
use crate::tensor::Tensor12;

/// `T_{ab}{}^c = Γ_{ab}{}^c - (-1)^{ãb̃} Γ_{ba}{}^c - C_{ab}{}^c`.
pub fn torsion(alg: &Algebroid, conn: &Connection) -> Result<TorsionTensor> {
    let c = alg.require_bracket("torsion")?;
    let bundle = alg.bundle();
    let g = conn.gamma();
    crate::algebroid::ensure_same_bundle(bundle, g.bundle())?;
    Ok(Tensor12::from_fn(bundle, |a, b, k| {
        let s = bundle.parity(a).koszul(bundle.parity(b));
        g.get(a, b, k) - g.get(b, a, k).signed(s) - c.get(a, b, k)
    }))
}

/// `∇_u v - (-1)^{ũṽ} ∇_v u - [u, v]` evaluated directly, bilinearly over
/// homogeneous parts.
pub fn torsion_direct(alg: &Algebroid, conn: &Connection, u: &Section, v: &Section) -> Result<Section> {
    alg.require_bracket("torsion")?;
    let mut out = Section::zero(alg.bundle());
    for (pu, uh) in u.homogeneous_parts() {
        for (pv, vh) in v.homogeneous_parts() {
            let t = conn
                .nabla(alg, &uh, &vh)?
                .try_sub(&conn.nabla(alg, &vh, &uh)?.signed(pu.koszul(pv)))?
                .try_sub(&alg.bracket(&uh, &vh)?)?;
            out = out.try_add(&t)?;
        }
    }
    Ok(out)
}

pub fn is_torsion_free(alg: &Algebroid, conn: &Connection) -> Result<bool> {
    Ok(torsion(alg, conn)?.is_zero())
}

/// Torsion of a triple product against `T₁ - T₂ + T₃`, and the cyclic
/// identity `T[1,2,3] + T[3,1,2] + T[2,3,1] = T₁ + T₂ + T₃`.
pub fn verify_torsion_heap_hom(
    alg: &Algebroid,
    c1: &Connection,
    c2: &Connection,
    c3: &Connection,
) -> Result<Vec<LawReport>> {
    let (t1, t2, t3) = (torsion(alg, c1)?, torsion(alg, c2)?, torsion(alg, c3)?);
    let witness = || vec![c1.to_string(), c2.to_string(), c3.to_string()];
    let lhs = torsion(alg, &Connection::heap(c1, c2, c3)?)?;
    let hom = lhs == Tensor12::heap(&t1, &t2, &t3)?;
    let cyclic_lhs = lhs
        .try_add(&torsion(alg, &Connection::heap(c3, c1, c2)?)?)?
        .try_add(&torsion(alg, &Connection::heap(c2, c3, c1)?)?)?;
    let cyclic = cyclic_lhs == t1.try_add(&t2)?.try_add(&t3)?;
    Ok(vec![
        LawReport::check("torsion heap homomorphism", hom, || {
            (witness(), "T[1,2,3] != T1 - T2 + T3".to_owned())
        }),
        LawReport::check("torsion cyclic identity", cyclic, || {
            (witness(), "T[1,2,3] + T[3,1,2] + T[2,3,1] != T1 + T2 + T3".to_owned())
        }),
    ])
}

pub fn torsion_equivalent(alg: &Algebroid, c1: &Connection, c2: &Connection) -> Result<bool> {
    Ok(torsion(alg, c1)? == torsion(alg, c2)?)
}

/// For a torsion-free `reference`, `[∇¹, ∇², reference]` is torsion-free
/// exactly when `∇¹` and `∇²` have the same torsion.
pub fn verify_torsion_equivalence(
    alg: &Algebroid,
    c1: &Connection,
    c2: &Connection,
    reference: &Connection,
) -> Result<LawReport> {
    if !is_torsion_free(alg, reference)? {
        return Err(Error::NotTorsionFree(reference.to_string()));
    }
    let same = torsion_equivalent(alg, c1, c2)?;
    let heap_tf = is_torsion_free(alg, &Connection::heap(c1, c2, reference)?)?;
    Ok(LawReport::check("torsion equivalence", same == heap_tf, || {
        (
            vec![c1.to_string(), c2.to_string(), reference.to_string()],
            format!("equal torsion = {same} but heap torsion-free = {heap_tf}"),
        )
    }))
}
