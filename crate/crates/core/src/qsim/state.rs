use nalgebra::{Cholesky, DMatrix};
use rand::Rng;

use super::{
    is_unitary, tol, unitarity_defect, CMatrix, Outcome, QubitIndex, SimError, SimResult,
    SingleQubitBasis, C64,
};

/// Outcome of a projective measurement together with the renormalized
/// post-measurement state.
#[derive(Clone, Debug)]
pub struct Measurement<S> {
    pub outcome: Outcome,
    pub probability: f64,
    pub post_state: S,
}

/// Operations shared by pure and mixed registers.
pub trait Register: Sized + Clone {
    fn n_qubits(&self) -> usize;

    /// Applies an arbitrary `2^k × 2^k` operator to `targets` without checking
    /// unitarity. The first target is the most significant bit of the
    /// operator's index.
    fn apply_operator(&self, op: &CMatrix, targets: &[QubitIndex]) -> SimResult<Self>;

    /// Squared norm for vectors, trace for density matrices.
    fn weight(&self) -> f64;

    fn scaled(&self, factor: f64) -> Self;

    fn apply_unitary(&self, u: &CMatrix, targets: &[QubitIndex]) -> SimResult<Self> {
        if !is_unitary(u, tol::UNITARY) {
            return Err(SimError::NonUnitary(unitarity_defect(u)));
        }
        self.apply_operator(u, targets)
    }

    /// Probability of projecting qubit `q` onto `vector`, and the normalized
    /// projected state when that probability exceeds the unreachable-branch
    /// threshold.
    fn project(&self, q: QubitIndex, vector: &[C64; 2]) -> SimResult<(f64, Option<Self>)> {
        let projector = CMatrix::from_fn(2, 2, |i, j| vector[i] * vector[j].conj());
        let unnormalized = self.apply_operator(&projector, &[q])?;
        let p = unnormalized.weight().max(0.0);
        if p <= tol::ZERO_BRANCH {
            return Ok((p, None));
        }
        let scale = match self.weight_kind() {
            WeightKind::Amplitude => 1.0 / p.sqrt(),
            WeightKind::Probability => 1.0 / p,
        };
        Ok((p, Some(unnormalized.scaled(scale))))
    }

    #[doc(hidden)]
    fn weight_kind(&self) -> WeightKind;

    /// Takes the branch `outcome` regardless of its Born probability.
    fn measure_forced(
        &self,
        q: QubitIndex,
        basis: &SingleQubitBasis,
        outcome: Outcome,
    ) -> SimResult<Measurement<Self>> {
        let (p, post) = self.project(q, basis.vector(outcome))?;
        match post {
            Some(post_state) => Ok(Measurement {
                outcome,
                probability: p,
                post_state,
            }),
            None => Err(SimError::ZeroProbabilityBranch(p)),
        }
    }

    /// Samples an outcome from the Born distribution. Branches at or below the
    /// unreachable threshold are never selected.
    fn measure_sampled<R: Rng + ?Sized>(
        &self,
        q: QubitIndex,
        basis: &SingleQubitBasis,
        rng: &mut R,
    ) -> SimResult<Measurement<Self>> {
        let (p0, post0) = self.project(q, &basis.b0)?;
        let (p1, post1) = self.project(q, &basis.b1)?;
        let draw: f64 = rng.gen::<f64>() * (p0 + p1);
        let pick_zero = match (&post0, &post1) {
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(_), Some(_)) => draw < p0,
            (None, None) => return Err(SimError::ZeroProbabilityBranch(p0 + p1)),
        };
        let (outcome, probability, post) = if pick_zero {
            (Outcome::Zero, p0, post0)
        } else {
            (Outcome::One, p1, post1)
        };
        Ok(Measurement {
            outcome,
            probability,
            post_state: post.expect("selected branch is reachable"),
        })
    }
}

#[doc(hidden)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum WeightKind {
    Amplitude,
    Probability,
}

fn check_targets(targets: &[QubitIndex], n_qubits: usize, op_dim: usize) -> SimResult<()> {
    let bad = || SimError::BadTargets {
        targets: targets.iter().map(|t| t.0).collect(),
        n_qubits,
    };
    if targets.is_empty() || 1usize << targets.len() != op_dim {
        return Err(bad());
    }
    for (i, t) in targets.iter().enumerate() {
        if t.0 >= n_qubits || targets[..i].contains(t) {
            return Err(bad());
        }
    }
    Ok(())
}

/// Amplitude indices touched by one application of a `k`-qubit operator.
struct LocalIndexer {
    mask: usize,
    offsets: Vec<usize>,
}

impl LocalIndexer {
    fn new(targets: &[QubitIndex], n_qubits: usize) -> Self {
        let k = targets.len();
        let bits: Vec<usize> = targets.iter().map(|t| 1 << (n_qubits - 1 - t.0)).collect();
        let offsets = (0..1usize << k)
            .map(|local| {
                bits.iter()
                    .enumerate()
                    .filter(|(j, _)| (local >> (k - 1 - j)) & 1 == 1)
                    .map(|(_, b)| b)
                    .sum()
            })
            .collect();
        Self {
            mask: bits.iter().sum(),
            offsets,
        }
    }

    fn apply(&self, op: &CMatrix, input: &[C64], output: &mut [C64]) {
        let dim = self.offsets.len();
        for base in (0..input.len()).filter(|b| b & self.mask == 0) {
            for r in 0..dim {
                let mut acc = C64::new(0.0, 0.0);
                for c in 0..dim {
                    acc += op[(r, c)] * input[base + self.offsets[c]];
                }
                output[base + self.offsets[r]] = acc;
            }
        }
    }
}

fn dim_to_qubits(dim: usize) -> SimResult<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(SimError::InvalidState(format!(
            "dimension {dim} is not a power of two"
        )));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// A normalized state vector of `2^n` amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amps: Vec<C64>,
}

impl PureState {
    pub fn from_amplitudes(amps: Vec<C64>) -> SimResult<Self> {
        let n_qubits = dim_to_qubits(amps.len())?;
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(SimError::InvalidState("non-finite amplitude".into()));
        }
        let state = Self { n_qubits, amps };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > tol::EXACT {
            return Err(SimError::NonUnitInput(norm));
        }
        Ok(state)
    }

    pub(crate) fn from_amplitudes_unchecked(amps: Vec<C64>) -> Self {
        let n_qubits = amps.len().trailing_zeros() as usize;
        Self { n_qubits, amps }
    }

    /// `|0…0⟩` on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = C64::new(1.0, 0.0);
        Self { n_qubits, amps }
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &PureState) -> SimResult<C64> {
        if self.dim() != other.dim() {
            return Err(SimError::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(x, y)| x.conj() * y)
            .sum())
    }

    /// `|⟨self|other⟩|²`, insensitive to global phase.
    pub fn overlap(&self, other: &PureState) -> SimResult<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        PureState {
            n_qubits: self.n_qubits + other.n_qubits,
            amps,
        }
    }
}

impl Register for PureState {
    fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    fn apply_operator(&self, op: &CMatrix, targets: &[QubitIndex]) -> SimResult<Self> {
        check_targets(targets, self.n_qubits, op.nrows())?;
        if !op.is_square() {
            return Err(SimError::DimensionMismatch {
                expected: op.nrows(),
                got: op.ncols(),
            });
        }
        let mut out = vec![C64::new(0.0, 0.0); self.amps.len()];
        LocalIndexer::new(targets, self.n_qubits).apply(op, &self.amps, &mut out);
        Ok(Self {
            n_qubits: self.n_qubits,
            amps: out,
        })
    }

    fn weight(&self) -> f64 {
        self.norm_sqr()
    }

    fn scaled(&self, factor: f64) -> Self {
        Self {
            n_qubits: self.n_qubits,
            amps: self.amps.iter().map(|a| a * factor).collect(),
        }
    }

    fn weight_kind(&self) -> WeightKind {
        WeightKind::Amplitude
    }
}

/// Diagnostic measures of how far a matrix is from a valid density matrix.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Validity {
    pub hermiticity_defect: f64,
    pub trace_defect: f64,
    pub positive_semidefinite: bool,
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        self.hermiticity_defect <= tol::EXACT
            && self.trace_defect <= tol::EXACT
            && self.positive_semidefinite
    }
}

/// A `2^n × 2^n` density matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    data: CMatrix,
}

impl DensityMatrix {
    pub fn new(data: CMatrix) -> SimResult<Self> {
        if !data.is_square() {
            return Err(SimError::DimensionMismatch {
                expected: data.nrows(),
                got: data.ncols(),
            });
        }
        let n_qubits = dim_to_qubits(data.nrows())?;
        let rho = Self { n_qubits, data };
        let v = rho.validity();
        if !v.is_valid() {
            return Err(SimError::InvalidState(format!("{v:?}")));
        }
        Ok(rho)
    }

    pub fn from_pure(psi: &PureState) -> Self {
        let v = psi.amplitudes();
        let data = CMatrix::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj());
        Self {
            n_qubits: psi.n_qubits(),
            data,
        }
    }

    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let d = 1 << n_qubits;
        Self {
            n_qubits,
            data: CMatrix::identity(d, d) * C64::new(1.0 / d as f64, 0.0),
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.data
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn trace(&self) -> C64 {
        self.data.trace()
    }

    /// `Tr ρ²`
    pub fn purity(&self) -> f64 {
        // Tr(ρ²) = Σ_ij |ρ_ij|² for Hermitian ρ
        self.data.iter().map(|x| x.norm_sqr()).sum()
    }

    /// True when `ρ + |tol::PSD|·I` admits a Cholesky factorization, i.e. every
    /// eigenvalue of the Hermitian part is above `tol::PSD`.
    pub fn is_positive_semidefinite(&self) -> bool {
        // Real embedding [[A, −B], [B, A]] of H = A + iB; the real factorization
        // rejects negative pivots, the complex one silently takes complex roots.
        let n = self.dim();
        let herm = (&self.data + self.data.adjoint()) * C64::new(0.5, 0.0);
        let shifted = DMatrix::<f64>::from_fn(2 * n, 2 * n, |i, j| {
            let x = herm[(i % n, j % n)];
            let shift = if i == j { -tol::PSD } else { 0.0 };
            match (i < n, j < n) {
                (true, false) => -x.im,
                (false, true) => x.im,
                _ => x.re + shift,
            }
        });
        Cholesky::new(shifted).is_some()
    }

    pub fn validity(&self) -> Validity {
        let hermiticity_defect = (&self.data - self.data.adjoint())
            .iter()
            .map(|x| x.norm())
            .fold(0.0, f64::max);
        let tr = self.trace();
        let trace_defect = (tr - C64::new(1.0, 0.0)).norm();
        let positive_semidefinite = self.is_positive_semidefinite();
        Validity {
            hermiticity_defect,
            trace_defect,
            positive_semidefinite,
        }
    }

    /// Largest entry-wise distance to `other`.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        (&self.data - &other.data)
            .iter()
            .map(|x| x.norm())
            .fold(0.0, f64::max)
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        Self {
            n_qubits: self.n_qubits + other.n_qubits,
            data: self.data.kronecker(&other.data),
        }
    }

    /// `Σ_k E_k ρ E_k†` on the qubit `target`.
    pub fn apply_kraus(&self, ops: &[CMatrix], target: QubitIndex) -> SimResult<Self> {
        let mut acc = CMatrix::zeros(self.dim(), self.dim());
        for e in ops {
            acc += self.apply_operator(e, &[target])?.data;
        }
        Ok(Self {
            n_qubits: self.n_qubits,
            data: acc,
        })
    }

    /// Reduced state on `keep`, in the order given.
    pub fn partial_trace(&self, keep: &[QubitIndex]) -> SimResult<DensityMatrix> {
        let n = self.n_qubits;
        let bad = || SimError::BadTargets {
            targets: keep.iter().map(|t| t.0).collect(),
            n_qubits: n,
        };
        if keep.is_empty() {
            return Err(bad());
        }
        for (i, q) in keep.iter().enumerate() {
            if q.0 >= n || keep[..i].contains(q) {
                return Err(bad());
            }
        }
        let traced: Vec<usize> = (0..n).filter(|q| !keep.iter().any(|k| k.0 == *q)).collect();
        let bit = |q: usize| 1usize << (n - 1 - q);
        let embed = |local: usize, qubits: &[usize]| -> usize {
            let k = qubits.len();
            qubits
                .iter()
                .enumerate()
                .filter(|(j, _)| (local >> (k - 1 - j)) & 1 == 1)
                .map(|(_, &q)| bit(q))
                .sum()
        };
        let keep_idx: Vec<usize> = keep.iter().map(|q| q.0).collect();
        let kd = 1usize << keep_idx.len();
        let td = 1usize << traced.len();
        let keep_offsets: Vec<usize> = (0..kd).map(|l| embed(l, &keep_idx)).collect();
        let env_offsets: Vec<usize> = (0..td).map(|l| embed(l, &traced)).collect();
        let data = CMatrix::from_fn(kd, kd, |i, j| {
            env_offsets
                .iter()
                .map(|e| self.data[(keep_offsets[i] + e, keep_offsets[j] + e)])
                .sum()
        });
        Ok(DensityMatrix {
            n_qubits: keep_idx.len(),
            data,
        })
    }
}

impl Register for DensityMatrix {
    fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// `A ρ A†`
    fn apply_operator(&self, op: &CMatrix, targets: &[QubitIndex]) -> SimResult<Self> {
        check_targets(targets, self.n_qubits, op.nrows())?;
        let d = self.dim();
        let idx = LocalIndexer::new(targets, self.n_qubits);
        let op_conj = op.map(|x| x.conj());
        // columns: A ρ
        let mut left = CMatrix::zeros(d, d);
        let mut buf = vec![C64::new(0.0, 0.0); d];
        for j in 0..d {
            let col: Vec<C64> = self.data.column(j).iter().copied().collect();
            idx.apply(op, &col, &mut buf);
            left.column_mut(j).copy_from_slice(&buf);
        }
        // rows: (A ρ) A†, row r ↦ conj(A) r
        let mut out = CMatrix::zeros(d, d);
        for i in 0..d {
            let row: Vec<C64> = left.row(i).iter().copied().collect();
            idx.apply(&op_conj, &row, &mut buf);
            for (j, v) in buf.iter().enumerate() {
                out[(i, j)] = *v;
            }
        }
        Ok(Self {
            n_qubits: self.n_qubits,
            data: out,
        })
    }

    fn weight(&self) -> f64 {
        self.trace().re
    }

    fn scaled(&self, factor: f64) -> Self {
        Self {
            n_qubits: self.n_qubits,
            data: &self.data * C64::new(factor, 0.0),
        }
    }

    fn weight_kind(&self) -> WeightKind {
        WeightKind::Probability
    }
}
