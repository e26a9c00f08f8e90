use num_traits::One;
use rand::Rng;

use super::Tensor3;
use crate::linalg::Rational;
use crate::{Error, Result};

/// The diagonal tensor `I_r`.
pub fn identity_tensor(r: usize) -> Result<Tensor3> {
    if r == 0 {
        return Err(Error::invalid("identity tensor needs r >= 1"));
    }
    Tensor3::from_sparse([r, r, r], (0..r).map(|i| ([i, i, i], Rational::one())))
}

/// The W-tensor `x0 y0 z1 + x0 y1 z0 + x1 y0 z0`.
pub fn w_tensor() -> Tensor3 {
    Tensor3::from_sparse(
        [2, 2, 2],
        [[0, 0, 1], [0, 1, 0], [1, 0, 0]].map(|idx| (idx, Rational::one())),
    )
    .expect("valid W-tensor")
}

/// The matrix multiplication tensor `<e,h,l>`: `trace(XYZ)` for `X: e x h`,
/// `Y: h x l`, `Z: l x e`, with x-index `i*h + j`, y-index `j*l + k` and
/// z-index `k*e + i`.
pub fn matmul_tensor(e: usize, h: usize, l: usize) -> Result<Tensor3> {
    if e == 0 || h == 0 || l == 0 {
        return Err(Error::invalid(format!(
            "matmul tensor <{e},{h},{l}> needs positive sizes"
        )));
    }
    let mut nz = Vec::with_capacity(e * h * l);
    for i in 0..e {
        for j in 0..h {
            for k in 0..l {
                nz.push(([i * h + j, j * l + k, k * e + i], Rational::one()));
            }
        }
    }
    Tensor3::from_sparse([e * h, h * l, l * e], nz)
}

/// Recovers `(e, h, l)` if `t` is exactly `matmul_tensor(e, h, l)`.
pub fn matmul_shape(t: &Tensor3) -> Option<(usize, usize, usize)> {
    let [n1, n2, n3] = t.dims();
    // n1 * n3 / n2 = e^2
    let e2 = (n1 * n3).checked_div(n2)?;
    if e2 * n2 != n1 * n3 {
        return None;
    }
    let e = (e2 as f64).sqrt().round() as usize;
    if e == 0 || e * e != e2 || n1 % e != 0 || n3 % e != 0 {
        return None;
    }
    let (h, l) = (n1 / e, n3 / e);
    if h * l != n2 || t.nnz() != e * h * l {
        return None;
    }
    (matmul_tensor(e, h, l).ok()? == *t).then_some((e, h, l))
}

/// Random integer tensor with coefficients uniform in `lo..=hi`.
pub fn random_integer_tensor<R: Rng + ?Sized>(dims: [usize; 3], lo: i64, hi: i64, rng: &mut R) -> Result<Tensor3> {
    if lo > hi {
        return Err(Error::invalid(format!("empty coefficient range {lo}..{hi}")));
    }
    let n: usize = dims.iter().product();
    let entries: Vec<i64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
    Tensor3::from_i64(dims, &entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::QMatrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_examples() {
        assert_eq!(identity_tensor(1).unwrap().entries(), &[Rational::one()]);
        let i2 = identity_tensor(2).unwrap();
        let nz: Vec<_> = i2.nonzeros().map(|(idx, _)| idx).collect();
        assert_eq!(nz, vec![[0, 0, 0], [1, 1, 1]]);
        assert_eq!(identity_tensor(3).unwrap().nnz(), 3);
        assert!(identity_tensor(0).is_err());
    }

    #[test]
    fn w_slices() {
        let w = w_tensor();
        // third-axis slice k = 0 is [[0,1],[1,0]]
        let slice: Vec<_> = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| w.get([i, j, 0]).clone())
            .collect();
        let expect = QMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(slice, expect.entries());
        assert_eq!(w.nnz(), 3);
    }

    #[test]
    fn matmul_examples() {
        assert_eq!(matmul_tensor(1, 1, 1).unwrap(), identity_tensor(1).unwrap());
        let m = matmul_tensor(2, 2, 2).unwrap();
        assert_eq!(m.dims(), [4, 4, 4]);
        assert_eq!(m.nnz(), 8);
        assert_eq!(matmul_tensor(2, 3, 5).unwrap().dims(), [6, 15, 10]);
        assert!(matmul_tensor(0, 1, 1).is_err());
    }

    #[test]
    fn matmul_shape_recovery() {
        for (e, h, l) in [(1, 1, 1), (2, 2, 2), (2, 3, 3), (1, 2, 3), (3, 1, 2), (2, 2, 5)] {
            assert_eq!(matmul_shape(&matmul_tensor(e, h, l).unwrap()), Some((e, h, l)));
        }
        assert_eq!(matmul_shape(&w_tensor()), None);
        assert_eq!(matmul_shape(&identity_tensor(2).unwrap()), None);
    }

    #[test]
    fn random_is_reproducible() {
        let a = random_integer_tensor([2, 2, 2], -2, 2, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        let b = random_integer_tensor([2, 2, 2], -2, 2, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        assert_eq!(a, b);
        assert!(a.entries().iter().all(|v| v.numer().magnitude() <= &2u8.into()));
    }
}
