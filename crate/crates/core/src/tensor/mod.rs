//! The dense 3-tensor model and the constructions and operations on it.

mod families;
mod hypergraph;

pub use families::{identity_tensor, matmul_shape, matmul_tensor, random_integer_tensor, w_tensor};
pub use hypergraph::{hypergraph_tensor, Hypergraph3};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::linalg::{is_integer, FpMatrix, FpScalar, Prime, QMatrix, Rational};
use crate::{Error, Result};

/// A dense `n1 x n2 x n3` tensor with rational coefficients, indexed `(i, j, k)`
/// in row-major order.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor3 {
    dims: [usize; 3],
    entries: Vec<Rational>,
}

/// Remaining two axes, in increasing order, once `axis` is removed.
pub fn other_axes(axis: usize) -> (usize, usize) {
    match axis {
        0 => (1, 2),
        1 => (0, 2),
        2 => (0, 1),
        _ => panic!("axis {axis} out of range"),
    }
}

fn check_axis(axis: usize) -> Result<()> {
    if axis < 3 {
        Ok(())
    } else {
        Err(Error::invalid(format!("axis {axis} out of range 0..3")))
    }
}

impl Tensor3 {
    pub fn zeros(dims: [usize; 3]) -> Result<Self> {
        if dims.contains(&0) {
            return Err(Error::invalid(format!("zero dimension in {dims:?}")));
        }
        Ok(Tensor3 {
            dims,
            entries: vec![Rational::zero(); dims.iter().product()],
        })
    }

    pub fn from_vec(dims: [usize; 3], entries: Vec<Rational>) -> Result<Self> {
        let mut t = Self::zeros(dims)?;
        if entries.len() != t.entries.len() {
            return Err(Error::mismatch(format!("{} entries for dims {dims:?}", entries.len())));
        }
        t.entries = entries;
        Ok(t)
    }

    pub fn from_i64(dims: [usize; 3], entries: &[i64]) -> Result<Self> {
        Self::from_vec(
            dims,
            entries.iter().map(|&v| Rational::from_integer(v.into())).collect(),
        )
    }

    /// Builds a tensor from sparse `(i, j, k, value)` entries; later duplicates are rejected.
    pub fn from_sparse(dims: [usize; 3], entries: impl IntoIterator<Item = ([usize; 3], Rational)>) -> Result<Self> {
        let mut t = Self::zeros(dims)?;
        let mut seen = std::collections::HashSet::new();
        for (idx, v) in entries {
            if (0..3).any(|a| idx[a] >= dims[a]) {
                return Err(Error::invalid(format!("index {idx:?} out of range for {dims:?}")));
            }
            if !seen.insert(idx) {
                return Err(Error::invalid(format!("duplicate entry at {idx:?}")));
            }
            t.set(idx, v);
        }
        Ok(t)
    }

    #[inline]
    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    #[inline]
    fn offset(&self, [i, j, k]: [usize; 3]) -> usize {
        (i * self.dims[1] + j) * self.dims[2] + k
    }

    pub fn get(&self, idx: [usize; 3]) -> &Rational {
        &self.entries[self.offset(idx)]
    }

    pub fn set(&mut self, idx: [usize; 3], v: Rational) {
        let o = self.offset(idx);
        self.entries[o] = v;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// Nonzero coefficients with their indices, in row-major order.
    pub fn nonzeros(&self) -> impl Iterator<Item = ([usize; 3], &Rational)> + '_ {
        let [_, n2, n3] = self.dims;
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(o, v)| ([o / (n2 * n3), (o / n3) % n2, o % n3], v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_integer(&self) -> bool {
        self.entries.iter().all(is_integer)
    }

    /// Coefficients reduced mod p, row-major. Requires an integer tensor.
    pub fn residues_mod(&self, p: Prime) -> Result<Vec<u64>> {
        if !self.is_integer() {
            return Err(Error::NonInteger);
        }
        let m = BigInt::from(p.get());
        Ok(self
            .entries
            .iter()
            .map(|v| {
                let r = ((v.numer() % &m) + &m) % &m;
                r.to_u64().expect("residue fits in u64")
            })
            .collect())
    }

    /// `(A, B, C) . T`, entry `(i,j,k)` equal to `sum A[i,a] B[j,b] C[k,c] T[a,b,c]`.
    pub fn restrict(&self, a: &QMatrix, b: &QMatrix, c: &QMatrix) -> Result<Tensor3> {
        let [n1, n2, n3] = self.dims;
        if a.cols() != n1 || b.cols() != n2 || c.cols() != n3 {
            return Err(Error::mismatch(format!(
                "restriction by {}x{}, {}x{}, {}x{} on dims {:?}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols(),
                c.rows(),
                c.cols(),
                self.dims
            )));
        }
        let [m1, m2, m3] = [a.rows(), b.rows(), c.rows()];
        // contract one axis at a time
        let mut s1 = vec![Rational::zero(); m1 * n2 * n3];
        for (idx, v) in self.nonzeros() {
            let [aa, bb, cc] = idx;
            for i in 0..m1 {
                let w = a.get(i, aa);
                if !w.is_zero() {
                    s1[(i * n2 + bb) * n3 + cc] += w * v;
                }
            }
        }
        let mut s2 = vec![Rational::zero(); m1 * m2 * n3];
        for i in 0..m1 {
            for bb in 0..n2 {
                for cc in 0..n3 {
                    let v = &s1[(i * n2 + bb) * n3 + cc];
                    if v.is_zero() {
                        continue;
                    }
                    for j in 0..m2 {
                        let w = b.get(j, bb);
                        if !w.is_zero() {
                            s2[(i * m2 + j) * n3 + cc] += w * v;
                        }
                    }
                }
            }
        }
        let mut out = Tensor3::zeros([m1, m2, m3])?;
        for i in 0..m1 {
            for j in 0..m2 {
                for cc in 0..n3 {
                    let v = &s2[(i * m2 + j) * n3 + cc];
                    if v.is_zero() {
                        continue;
                    }
                    for k in 0..m3 {
                        let w = c.get(k, cc);
                        if !w.is_zero() {
                            let o = out.offset([i, j, k]);
                            out.entries[o] += w * v;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal tensor with blocks `self` and `other`.
    pub fn direct_sum(&self, other: &Tensor3) -> Tensor3 {
        let d = self.dims;
        let mut out =
            Tensor3::zeros([d[0] + other.dims[0], d[1] + other.dims[1], d[2] + other.dims[2]]).expect("positive dims");
        for (idx, v) in self.nonzeros() {
            out.set(idx, v.clone());
        }
        for ([i, j, k], v) in other.nonzeros() {
            out.set([i + d[0], j + d[1], k + d[2]], v.clone());
        }
        out
    }

    /// Coefficientwise sum.
    pub fn entrywise_sum(&self, other: &Tensor3) -> Result<Tensor3> {
        if self.dims != other.dims {
            return Err(Error::mismatch(format!("{:?} vs {:?}", self.dims, other.dims)));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Tensor3 {
            dims: self.dims,
            entries,
        })
    }

    pub fn scale(&self, c: &Rational) -> Tensor3 {
        Tensor3 {
            dims: self.dims,
            entries: self.entries.iter().map(|v| v * c).collect(),
        }
    }

    /// Kronecker product; the pair `(a, i)` on each axis is encoded as `a * n_T + i`.
    pub fn kron(&self, other: &Tensor3) -> Tensor3 {
        let [p1, p2, p3] = other.dims;
        let dims = [self.dims[0] * p1, self.dims[1] * p2, self.dims[2] * p3];
        let mut out = Tensor3::zeros(dims).expect("positive dims");
        for ([a, b, c], s) in self.nonzeros() {
            for ([i, j, k], t) in other.nonzeros() {
                out.set([a * p1 + i, b * p2 + j, c * p3 + k], s * t);
            }
        }
        out
    }

    /// Relocates coefficients so that new axis `d` is old axis `perm[d]`.
    pub fn permute_axes(&self, perm: [usize; 3]) -> Result<Tensor3> {
        let mut sorted = perm;
        sorted.sort_unstable();
        if sorted != [0, 1, 2] {
            return Err(Error::invalid(format!("{perm:?} is not a permutation of 0..3")));
        }
        let dims = [self.dims[perm[0]], self.dims[perm[1]], self.dims[perm[2]]];
        let mut out = Tensor3::zeros(dims)?;
        for (old, v) in self.nonzeros() {
            out.set([old[perm[0]], old[perm[1]], old[perm[2]]], v.clone());
        }
        Ok(out)
    }

    /// Rows indexed by `axis`, columns by the row-major pairing of the other two axes.
    pub fn flatten(&self, axis: usize) -> Result<QMatrix> {
        check_axis(axis)?;
        let (a, b) = other_axes(axis);
        let (nb, nc) = (self.dims[a], self.dims[b]);
        let mut m = QMatrix::zeros(self.dims[axis], nb * nc);
        for (idx, v) in self.nonzeros() {
            m.set(idx[axis], idx[a] * nc + idx[b], v.clone());
        }
        Ok(m)
    }

    /// Contracts `axis` against `v`: the matrix indexed by the two remaining
    /// axes (increasing order) with entries `sum_t v_t T[..t..]`.
    pub fn contract(&self, axis: usize, v: &[Rational]) -> Result<QMatrix> {
        check_axis(axis)?;
        if v.len() != self.dims[axis] {
            return Err(Error::mismatch(format!(
                "vector of length {} against axis {axis} of size {}",
                v.len(),
                self.dims[axis]
            )));
        }
        let (a, b) = other_axes(axis);
        let mut m = QMatrix::zeros(self.dims[a], self.dims[b]);
        for (idx, t) in self.nonzeros() {
            let w = &v[idx[axis]];
            if !w.is_zero() {
                let cur = m.get(idx[a], idx[b]) + w * t;
                m.set(idx[a], idx[b], cur);
            }
        }
        Ok(m)
    }

    /// `T(x, ., .)`.
    pub fn contract_x(&self, x: &[Rational]) -> Result<QMatrix> {
        self.contract(0, x)
    }

    /// `T(x, ., .)` over F_p. Requires an integer tensor.
    pub fn contract_x_fp(&self, x: &[FpScalar]) -> Result<FpMatrix> {
        let p = x
            .first()
            .map(|s| s.modulus())
            .ok_or_else(|| Error::mismatch("empty vector"))?;
        if x.len() != self.dims[0] || x.iter().any(|s| s.modulus() != p) {
            return Err(Error::mismatch("vector length or modulus"));
        }
        let res = self.residues_mod(p)?;
        let [n1, n2, n3] = self.dims;
        let mut out = vec![0u64; n2 * n3];
        for i in 0..n1 {
            let xi = x[i];
            if xi.is_zero() {
                continue;
            }
            for jk in 0..n2 * n3 {
                let t = FpScalar::new(res[i * n2 * n3 + jk], p);
                out[jk] = (FpScalar::new(out[jk], p) + xi * t).residue();
            }
        }
        FpMatrix::from_residues(n2, n3, p, out)
    }

    /// The trilinear form `sum T[i,j,k] x_i y_j z_k`.
    pub fn eval(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Result<Rational> {
        if [x.len(), y.len(), z.len()] != self.dims {
            return Err(Error::mismatch("argument lengths"));
        }
        Ok(self.nonzeros().map(|([i, j, k], t)| t * &x[i] * &y[j] * &z[k]).sum())
    }

    pub fn neg(&self) -> Tensor3 {
        self.scale(&-Rational::one())
    }
}

impl fmt::Debug for Tensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor3{:?}{{", self.dims)?;
        for (n, (idx, v)) in self.nonzeros().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{idx:?}: {v}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn qs(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn zero_dims_rejected() {
        assert!(Tensor3::zeros([0, 1, 1]).is_err());
    }

    #[test]
    fn restriction_examples() {
        let w = w_tensor();
        let id = QMatrix::identity(2);
        assert_eq!(w.restrict(&id, &id, &id).unwrap(), w);
        let z = QMatrix::zeros(2, 2);
        assert!(w.restrict(&z, &z, &z).unwrap().is_zero());
        let e0 = QMatrix::from_i64_rows(&[vec![1, 0]]).unwrap();
        let r = w.restrict(&e0, &e0, &e0).unwrap();
        assert_eq!(r.dims(), [1, 1, 1]);
        assert!(r.is_zero());
        assert!(w.restrict(&e0, &e0, &QMatrix::identity(3)).is_err());
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(
            identity_tensor(1).unwrap().direct_sum(&identity_tensor(1).unwrap()),
            identity_tensor(2).unwrap()
        );
        let w = w_tensor();
        let ww = w.direct_sum(&w);
        assert_eq!(ww.dims(), [4, 4, 4]);
        assert_eq!(ww.nnz(), 6);
        let padded = w.direct_sum(&Tensor3::zeros([1, 1, 1]).unwrap());
        assert_eq!(padded.dims(), [3, 3, 3]);
        assert_eq!(padded.nnz(), 3);
    }

    #[test]
    fn entrywise_sum_examples() {
        let w = w_tensor();
        assert_eq!(w.entrywise_sum(&Tensor3::zeros([2, 2, 2]).unwrap()).unwrap(), w);
        assert!(w.entrywise_sum(&w.neg()).unwrap().is_zero());
        let single = Tensor3::from_sparse([2, 2, 2], [([0, 1, 1], q(1))]).unwrap();
        assert_eq!(identity_tensor(2).unwrap().entrywise_sum(&single).unwrap().nnz(), 3);
        assert!(w.entrywise_sum(&identity_tensor(3).unwrap()).is_err());
    }

    #[test]
    fn kron_examples() {
        let w = w_tensor();
        assert_eq!(identity_tensor(1).unwrap().kron(&w), w);
        let i2 = identity_tensor(2).unwrap();
        assert_eq!(i2.kron(&i2), identity_tensor(4).unwrap());
    }

    #[test]
    fn permutation_examples() {
        let w = w_tensor();
        assert_eq!(w.permute_axes([0, 1, 2]).unwrap(), w);
        assert_eq!(w.permute_axes([1, 2, 0]).unwrap(), w);
        let t = Tensor3::from_i64([1, 2, 3], &[1, 2, 3, 4, 5, 6]).unwrap();
        let s = t.permute_axes([2, 0, 1]).unwrap();
        assert_eq!(s.dims(), [3, 1, 2]);
        assert_eq!(s.get([2, 0, 1]), t.get([0, 1, 2]));
        assert_eq!(t.permute_axes([1, 0, 2]).unwrap().permute_axes([1, 0, 2]).unwrap(), t);
        assert!(t.permute_axes([0, 0, 1]).is_err());
    }

    #[test]
    fn flatten_examples() {
        let f = identity_tensor(2).unwrap().flatten(0).unwrap();
        assert_eq!((f.rows(), f.cols()), (2, 4));
        assert_eq!(crate::linalg::q_rank(&f), 2);
        for axis in 0..3 {
            assert_eq!(crate::linalg::q_rank(&w_tensor().flatten(axis).unwrap()), 2);
        }
        let z = Tensor3::zeros([2, 3, 2]).unwrap().flatten(1).unwrap();
        assert!(z.entries().iter().all(Zero::is_zero));
        assert_eq!((z.rows(), z.cols()), (3, 4));
        assert!(w_tensor().flatten(3).is_err());
    }

    #[test]
    fn contraction_examples() {
        let w = w_tensor();
        let m = w.contract_x(&qs(&[1, 0])).unwrap();
        // the i = 0 slab
        for j in 0..2 {
            for k in 0..2 {
                assert_eq!(m.get(j, k), w.get([0, j, k]));
            }
        }
        assert!(w.contract_x(&qs(&[0, 0])).unwrap().entries().iter().all(Zero::is_zero));
        assert_eq!(
            w.contract_x(&qs(&[1, 1])).unwrap(),
            QMatrix::from_i64_rows(&[vec![1, 1], vec![1, 0]]).unwrap()
        );
        assert!(w.contract_x(&qs(&[1])).is_err());

        let p = Prime::new(5).unwrap();
        let x = [FpScalar::new(1, p), FpScalar::new(1, p)];
        let mf = w.contract_x_fp(&x).unwrap();
        assert_eq!(mf.residues(), &[1, 1, 1, 0]);
    }

    #[test]
    fn eval_examples() {
        let w = w_tensor();
        assert_eq!(w.eval(&qs(&[1, 0]), &qs(&[1, 0]), &qs(&[0, 1])).unwrap(), q(1));
        assert_eq!(w.eval(&qs(&[0, 0]), &qs(&[3, 1]), &qs(&[2, 1])).unwrap(), q(0));
        assert_eq!(w.eval(&qs(&[1, 1]), &qs(&[1, 1]), &qs(&[1, 1])).unwrap(), q(3));
        let t = Tensor3::from_i64([1, 2, 3], &[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(t.eval(&qs(&[1]), &qs(&[0, 1]), &qs(&[0, 0, 1])).unwrap(), q(6));
    }

    #[test]
    fn residues_require_integers() {
        let t = Tensor3::from_vec([1, 1, 1], vec![Rational::new(1.into(), 2.into())]).unwrap();
        assert_eq!(t.residues_mod(Prime::new(5).unwrap()), Err(Error::NonInteger));
        let t = Tensor3::from_i64([1, 1, 2], &[-1, 7]).unwrap();
        assert_eq!(t.residues_mod(Prime::new(5).unwrap()).unwrap(), vec![4, 2]);
    }
}
