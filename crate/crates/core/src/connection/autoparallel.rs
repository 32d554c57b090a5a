use super::Connection;
use crate::algebroid::{Algebroid, Section};
use crate::error::Result;
use crate::laws::LawReport;
use crate::superalgebra::Coefficient;

/// `∇_u u = 0`.
pub fn is_auto_parallel(alg: &Algebroid, conn: &Connection, u: &Section) -> Result<bool> {
    Ok(conn.nabla(alg, u, u)?.is_zero())
}

/// Corrects `conn` so that `∇_u u = 0`, by adjusting `Γ_{a a}{}^c` at the
/// first basis index `a` whose component of `u` is a nonzero constant `q`:
/// the correction contributes `q² δΓ_{aa}{}^c` to `∇_u u`.
///
/// Returns `None` when `u` has no constant component.
pub fn make_auto_parallel(alg: &Algebroid, conn: &Connection, u: &Section) -> Result<Option<Connection>> {
    let Some((a, q)) = u
        .components()
        .iter()
        .enumerate()
        .find_map(|(a, f)| f.as_constant().filter(|q| *q != Coefficient::from_integer(0.into())).map(|q| (a, q)))
    else {
        return Ok(None);
    };
    let r = conn.nabla(alg, u, u)?;
    let inv = (&q * &q).recip();
    let mut gamma = conn.gamma().clone();
    for c in 0..alg.rank() {
        let adjusted = gamma.get(a, a, c) - &r.component(c).scale(&inv);
        gamma.set(a, a, c, adjusted);
    }
    let fixed = Connection::new(gamma)?;
    debug_assert!(is_auto_parallel(alg, &fixed, u)?);
    Ok(Some(fixed))
}

/// If `∇_u u = 0` for all three connections then also for their heap.
pub fn verify_autoparallel_closure(
    alg: &Algebroid,
    u: &Section,
    c1: &Connection,
    c2: &Connection,
    c3: &Connection,
) -> Result<LawReport> {
    for c in [c1, c2, c3] {
        if !is_auto_parallel(alg, c, u)? {
            return Ok(LawReport::pass("auto-parallel closure (vacuous: an input is not auto-parallel)"));
        }
    }
    let heap = Connection::heap(c1, c2, c3)?;
    let ok = is_auto_parallel(alg, &heap, u)?;
    Ok(LawReport::check("auto-parallel closure", ok, || {
        (
            vec![u.to_string(), c1.to_string(), c2.to_string(), c3.to_string()],
            format!("nabla_u u = {} for the heap", heap.nabla(alg, u, u).map(|s| s.to_string()).unwrap_or_default()),
        )
    }))
}
