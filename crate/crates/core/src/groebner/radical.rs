use super::buchberger::{buchberger, BuchbergerConfig};
use super::poly::MultiPoly;
use crate::{Error, Result};

/// Whether `f` vanishes on `V(gens)`, i.e. `f` lies in the radical of
/// `<gens>`. Uses an extra variable `t` and tests `1 in <gens, 1 - t f>`.
pub fn radical_membership(f: &MultiPoly, gens: &[MultiPoly], config: &BuchbergerConfig) -> Result<bool> {
    let n = f.nvars();
    if let Some(g) = gens.iter().find(|g| g.nvars() != n) {
        return Err(Error::mismatch(format!(
            "generator in {} variables, polynomial in {n}",
            g.nvars()
        )));
    }
    if f.is_zero() {
        return Ok(true);
    }
    let m = n + 1;
    let t = MultiPoly::var(m, n);
    let mut ext: Vec<MultiPoly> = gens.iter().map(|g| g.extend(m)).collect();
    ext.push(MultiPoly::one(m).sub(&t.mul(&f.extend(m))));
    Ok(buchberger(&ext, m, config)?.is_unit_ideal())
}
