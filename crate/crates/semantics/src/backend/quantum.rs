//! Finite direct sums of matrix algebras and completely positive
//! trace-preserving maps between them.
//!
//! An object `[d1, ..., dk]` is the algebra of block-diagonal matrices with
//! blocks of sizes `d1..dk`. Tensor is the blockwise Kronecker product in
//! lexicographic block order; coproduct concatenates block lists. A map is
//! stored as its transfer matrix on the concatenated column-major
//! vectorisations of the blocks; [`choi`] recovers its Choi matrices, which
//! hold the same entries.

use crate::triangle::{SemError, Triangle};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_rational::Rational64;
use qpel_core::syntax::Angle;

pub const TOL: f64 = 1e-9;

pub type Block = DMatrix<Complex64>;
pub type Blocks = Vec<Block>;

#[derive(Clone, Debug)]
pub struct Channel {
    pub dom: Vec<usize>,
    pub cod: Vec<usize>,
    pub t: DMatrix<Complex64>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct QuantumBackend;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn vec_len(dims: &[usize]) -> usize {
    dims.iter().map(|d| d * d).sum()
}

fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(dims.len());
    let mut acc = 0;
    for d in dims {
        out.push(acc);
        acc += d * d;
    }
    out
}

pub fn vectorize(blocks: &[Block]) -> DVector<Complex64> {
    let mut v = Vec::new();
    for b in blocks {
        v.extend(b.iter().copied());
    }
    DVector::from_vec(v)
}

pub fn unvectorize(dims: &[usize], v: &DVector<Complex64>) -> Blocks {
    let offs = offsets(dims);
    dims.iter()
        .zip(offs)
        .map(|(&d, o)| DMatrix::from_column_slice(d, d, &v.as_slice()[o..o + d * d]))
        .collect()
}

/// The matrix unit `|a><b|` of size `d`.
pub fn unit_matrix(d: usize, a: usize, b: usize) -> Block {
    let mut m = DMatrix::zeros(d, d);
    m[(a, b)] = c(1.0);
    m
}

pub fn zero_blocks(dims: &[usize]) -> Blocks {
    dims.iter().map(|&d| DMatrix::zeros(d, d)).collect()
}

pub fn identity_blocks(dims: &[usize]) -> Blocks {
    dims.iter().map(|&d| DMatrix::identity(d, d)).collect()
}

impl Channel {
    /// The linear map sending `|a><b|` in block `i` to `f(i, a, b)`.
    pub fn from_fn(dom: &[usize], cod: &[usize], f: impl Fn(usize, usize, usize) -> Blocks) -> Channel {
        let mut t = DMatrix::zeros(vec_len(cod), vec_len(dom));
        let offs = offsets(dom);
        for (i, &d) in dom.iter().enumerate() {
            for b in 0..d {
                for a in 0..d {
                    let col = offs[i] + a + b * d;
                    t.set_column(col, &vectorize(&f(i, a, b)));
                }
            }
        }
        Channel {
            dom: dom.to_vec(),
            cod: cod.to_vec(),
            t,
        }
    }

    /// The channel `rho -> K rho K^dagger` on a single block.
    pub fn kraus1(k: &Block) -> Channel {
        let d = k.nrows();
        Channel::from_fn(&[d], &[d], |_, a, b| vec![k * unit_matrix(d, a, b) * k.adjoint()])
    }

    /// Image of `|a><b|` in block `i`.
    pub fn image(&self, i: usize, a: usize, b: usize) -> Blocks {
        let d = self.dom[i];
        let col = offsets(&self.dom)[i] + a + b * d;
        unvectorize(&self.cod, &self.t.column(col).into_owned())
    }

    pub fn apply(&self, rho: &[Block]) -> Blocks {
        unvectorize(&self.cod, &(&self.t * vectorize(rho)))
    }

    /// The Heisenberg dual: `Tr(dual(e) rho) = Tr(e self(rho))`.
    pub fn dual(&self, e: &[Block]) -> Blocks {
        unvectorize(&self.dom, &(self.t.adjoint() * vectorize(e)))
    }
}

/// Choi matrix of the part of `f` from input block `i` to output block `j`:
/// the sum over `a, b` of `|a><b| (x) f(|a><b|)_j`.
pub fn choi(f: &Channel, i: usize, j: usize) -> Block {
    let (d, e) = (f.dom[i], f.cod[j]);
    let mut m = DMatrix::zeros(d * e, d * e);
    for a in 0..d {
        for b in 0..d {
            let img = &f.image(i, a, b)[j];
            m.view_mut((a * e, b * e), (e, e)).copy_from(img);
        }
    }
    m
}

pub fn min_eigenvalue(m: &Block) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    let h = (m + m.adjoint()) * c(0.5);
    h.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Completely positive and trace preserving within tolerance.
pub fn is_channel(f: &Channel) -> bool {
    for i in 0..f.dom.len() {
        for j in 0..f.cod.len() {
            if min_eigenvalue(&choi(f, i, j)) < -TOL {
                return false;
            }
        }
        for a in 0..f.dom[i] {
            for b in 0..f.dom[i] {
                let tr: Complex64 = f.image(i, a, b).iter().map(|m| m.trace()).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                if (tr - c(want)).norm() > TOL {
                    return false;
                }
            }
        }
    }
    true
}

pub fn frobenius(blocks: &[Block]) -> f64 {
    blocks.iter().map(|b| b.norm_squared()).sum::<f64>().sqrt()
}

fn block_sub(p: &[Block], q: &[Block]) -> Blocks {
    p.iter().zip(q).map(|(a, b)| a - b).collect()
}

/// `p <= q` in the Loewner order, blockwise.
pub fn loewner_leq(p: &[Block], q: &[Block]) -> bool {
    block_sub(q, p).iter().all(|m| min_eigenvalue(m) >= -TOL)
}

pub fn pauli_x_matrix() -> Block {
    DMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)])
}

pub fn pauli_z_matrix() -> Block {
    DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)])
}

pub fn cz_matrix() -> Block {
    let mut m = DMatrix::identity(4, 4);
    m[(3, 3)] = c(-1.0);
    m
}

/// The projector onto `(|0> + e^{ia}|1>)/sqrt 2`.
pub fn proj_matrix(angle: &Angle) -> Block {
    let a = angle.radians();
    DMatrix::from_row_slice(
        2,
        2,
        &[c(0.5), Complex64::from_polar(0.5, -a), Complex64::from_polar(0.5, a), c(0.5)],
    )
}

fn tensor_dims(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

fn embed(cod: &[usize], at: usize, m: Block) -> Blocks {
    let mut out = zero_blocks(cod);
    out[at] = m;
    out
}

impl Triangle for QuantumBackend {
    type Ob = Vec<usize>;
    type Mor = Channel;
    type Pred = Blocks;
    type Scalar = f64;

    fn name(&self) -> &'static str {
        "quantum"
    }

    fn unit(&self) -> Vec<usize> {
        vec![1]
    }

    fn tensor(&self, a: &Vec<usize>, b: &Vec<usize>) -> Vec<usize> {
        tensor_dims(a, b)
    }

    fn sum(&self, a: &Vec<usize>, b: &Vec<usize>) -> Vec<usize> {
        a.iter().chain(b).copied().collect()
    }

    fn dom(&self, f: &Channel) -> Vec<usize> {
        f.dom.clone()
    }

    fn cod(&self, f: &Channel) -> Vec<usize> {
        f.cod.clone()
    }

    fn id(&self, a: &Vec<usize>) -> Channel {
        let n = vec_len(a);
        Channel {
            dom: a.clone(),
            cod: a.clone(),
            t: DMatrix::identity(n, n),
        }
    }

    fn compose(&self, g: &Channel, f: &Channel) -> Channel {
        assert_eq!(f.cod, g.dom, "composing incompatible channels");
        Channel {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            t: &g.t * &f.t,
        }
    }

    fn tensor_mor(&self, f: &Channel, g: &Channel) -> Channel {
        let dom = tensor_dims(&f.dom, &g.dom);
        let cod = tensor_dims(&f.cod, &g.cod);
        let gd = g.dom.clone();
        Channel::from_fn(&dom, &cod, |blk, row, col| {
            let (i, k) = (blk / gd.len(), blk % gd.len());
            let dk = gd[k];
            let fi = f.image(i, row / dk, col / dk);
            let gk = g.image(k, row % dk, col % dk);
            fi.iter().flat_map(|x| gk.iter().map(move |y| x.kronecker(y))).collect()
        })
    }

    fn swap(&self, a: &Vec<usize>, b: &Vec<usize>) -> Channel {
        let dom = tensor_dims(a, b);
        let cod = tensor_dims(b, a);
        Channel::from_fn(&dom, &cod, |blk, row, col| {
            let (i, k) = (blk / b.len(), blk % b.len());
            let (di, dk) = (a[i], b[k]);
            let x = unit_matrix(di, row / dk, col / dk);
            let y = unit_matrix(dk, row % dk, col % dk);
            embed(&cod, k * a.len() + i, y.kronecker(&x))
        })
    }

    fn bang(&self, a: &Vec<usize>) -> Channel {
        Channel::from_fn(a, &[1], |_, r, s| vec![DMatrix::from_element(1, 1, c(if r == s { 1.0 } else { 0.0 }))])
    }

    fn inl(&self, a: &Vec<usize>, b: &Vec<usize>) -> Channel {
        let cod = self.sum(a, b);
        Channel::from_fn(a, &cod, |i, r, s| embed(&cod, i, unit_matrix(a[i], r, s)))
    }

    fn inr(&self, a: &Vec<usize>, b: &Vec<usize>) -> Channel {
        let cod = self.sum(a, b);
        Channel::from_fn(b, &cod, |i, r, s| embed(&cod, a.len() + i, unit_matrix(b[i], r, s)))
    }

    fn cotuple(&self, f: &Channel, g: &Channel) -> Channel {
        assert_eq!(f.cod, g.cod, "cotuple of channels with different codomains");
        let mut t = DMatrix::zeros(f.t.nrows(), f.t.ncols() + g.t.ncols());
        t.view_mut((0, 0), f.t.shape()).copy_from(&f.t);
        t.view_mut((0, f.t.ncols()), g.t.shape()).copy_from(&g.t);
        Channel {
            dom: self.sum(&f.dom, &g.dom),
            cod: f.cod.clone(),
            t,
        }
    }

    fn dist_l(&self, a: &Vec<usize>, b: &Vec<usize>, cc: &Vec<usize>) -> Channel {
        let bc = self.sum(b, cc);
        let dom = tensor_dims(a, &bc);
        let cod = self.sum(&tensor_dims(a, b), &tensor_dims(a, cc));
        Channel::from_fn(&dom, &cod, |blk, r, s| {
            let (i, m) = (blk / bc.len(), blk % bc.len());
            let target = if m < b.len() {
                i * b.len() + m
            } else {
                a.len() * b.len() + i * cc.len() + (m - b.len())
            };
            embed(&cod, target, unit_matrix(dom[blk], r, s))
        })
    }

    fn dist_r(&self, a: &Vec<usize>, b: &Vec<usize>, cc: &Vec<usize>) -> Channel {
        self.id(&tensor_dims(&self.sum(a, b), cc))
    }

    fn mor_eq(&self, f: &Channel, g: &Channel) -> bool {
        self.mor_distance(f, g) <= TOL
    }

    fn mor_distance(&self, f: &Channel, g: &Channel) -> f64 {
        if f.dom != g.dom || f.cod != g.cod {
            return f64::INFINITY;
        }
        (&f.t - &g.t).norm()
    }

    fn pred_zero(&self, a: &Vec<usize>) -> Blocks {
        zero_blocks(a)
    }

    fn pred_orth(&self, p: &Blocks) -> Blocks {
        p.iter().map(|m| DMatrix::identity(m.nrows(), m.nrows()) - m).collect()
    }

    fn pred_ovee(&self, p: &Blocks, q: &Blocks) -> Option<Blocks> {
        let s: Blocks = p.iter().zip(q).map(|(a, b)| a + b).collect();
        let dims: Vec<usize> = s.iter().map(|m| m.nrows()).collect();
        loewner_leq(&s, &identity_blocks(&dims)).then_some(s)
    }

    fn pred_scale(&self, r: &f64, p: &Blocks) -> Blocks {
        p.iter().map(|m| m * c(*r)).collect()
    }

    fn pred_leq(&self, p: &Blocks, q: &Blocks) -> bool {
        loewner_leq(p, q)
    }

    fn pred_eq(&self, p: &Blocks, q: &Blocks) -> bool {
        self.pred_distance(p, q) <= TOL
    }

    fn pred_distance(&self, p: &Blocks, q: &Blocks) -> f64 {
        if p.len() != q.len() || p.iter().zip(q).any(|(a, b)| a.shape() != b.shape()) {
            return f64::INFINITY;
        }
        frobenius(&block_sub(p, q))
    }

    fn pred_cotuple(&self, p: &Blocks, q: &Blocks) -> Blocks {
        p.iter().chain(q).cloned().collect()
    }

    fn pred_scalar(&self, p: &Blocks) -> f64 {
        p[0][(0, 0)].re
    }

    fn apply_p(&self, f: &Channel, q: &Blocks) -> Blocks {
        f.dual(q)
    }

    fn scalar_const(&self, r: &Rational64) -> Result<f64, SemError> {
        Ok(*r.numer() as f64 / *r.denom() as f64)
    }

    fn scalar_ovee(&self, r: &f64, s: &f64) -> Option<f64> {
        (r + s <= 1.0 + TOL).then_some(r + s)
    }

    fn scalar_eq(&self, r: &f64, s: &f64) -> bool {
        (r - s).abs() <= TOL
    }

    fn validity(&self, p: &Blocks, s: &Channel) -> f64 {
        let rho = s.apply(&[DMatrix::from_element(1, 1, c(1.0))]);
        p.iter().zip(&rho).map(|(e, r)| (e * r).trace().re).sum()
    }

    fn meas(&self, a: &Vec<usize>, ps: &[Blocks]) -> Result<Channel, SemError> {
        let mut total = zero_blocks(a);
        for p in ps {
            if !loewner_leq(&zero_blocks(a), p) {
                return Err(SemError::Undefined("a measurement effect is not positive".into()));
            }
            total = total.iter().zip(p).map(|(x, y)| x + y).collect();
        }
        let dev = frobenius(&block_sub(&total, &identity_blocks(a)));
        if dev > TOL {
            return Err(SemError::Undefined(format!(
                "measurement effects sum to the identity only up to {dev:e}"
            )));
        }
        let cod = vec![1; ps.len()];
        Ok(Channel::from_fn(a, &cod, |i, r, s| {
            ps.iter().map(|p| DMatrix::from_element(1, 1, p[i][(s, r)])).collect()
        }))
    }

    fn qbit(&self) -> Result<Vec<usize>, SemError> {
        Ok(vec![2])
    }

    fn plus(&self) -> Result<Channel, SemError> {
        Ok(Channel::from_fn(&[1], &[2], |_, _, _| vec![proj_matrix(&Angle::zero())]))
    }

    fn pauli_x(&self) -> Result<Channel, SemError> {
        Ok(Channel::kraus1(&pauli_x_matrix()))
    }

    fn pauli_z(&self) -> Result<Channel, SemError> {
        Ok(Channel::kraus1(&pauli_z_matrix()))
    }

    fn cz(&self) -> Result<Channel, SemError> {
        Ok(Channel::kraus1(&cz_matrix()))
    }

    fn proj(&self, angle: &Angle) -> Result<Blocks, SemError> {
        Ok(vec![proj_matrix(angle)])
    }
}
