//! The topological side: cobordisms between disjoint unions of circles,
//! modeled as wired collections of connected components. Gluing merges
//! components by union-find and recovers genus from additive Euler
//! characteristics; evaluation sends a cobordism to a linear map under
//! a chosen Frobenius algebra.
//!
//! Boundary circles are ordered; permutations are explicit via `swap`.
//! Composition glues output k of the first cobordism to input k of the
//! second, positionally.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::frobenius::FrobeniusAlgebra;
use crate::tensor::{kron, tensor_permutation, Matrix, Scalar};

/// Largest matrix (entry count) `evaluate` will build.
const MAX_ENTRIES: usize = 1 << 22;

pub type CircleId = u32;

/// A connected component: genus plus ordered boundary circles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub genus: u32,
    pub inputs: Vec<CircleId>,
    pub outputs: Vec<CircleId>,
}

impl Component {
    fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - (self.inputs.len() + self.outputs.len()) as i64
    }
}

/// The generating cobordisms of the two-dimensional cobordism category,
/// plus the boundary-permuting `swap`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Unit,
    Counit,
    Mul,
    Comul,
    Id,
    Swap,
}

impl Generator {
    pub fn arity(self) -> (usize, usize) {
        match self {
            Generator::Unit => (0, 1),
            Generator::Counit => (1, 0),
            Generator::Mul => (2, 1),
            Generator::Comul => (1, 2),
            Generator::Id => (1, 1),
            Generator::Swap => (2, 2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::Unit => "unit",
            Generator::Counit => "counit",
            Generator::Mul => "mul",
            Generator::Comul => "comul",
            Generator::Id => "id",
            Generator::Swap => "swap",
        }
    }

    pub const ALL: [Generator; 6] = [
        Generator::Unit,
        Generator::Counit,
        Generator::Mul,
        Generator::Comul,
        Generator::Id,
        Generator::Swap,
    ];
}

/// A cobordism from m ordered input circles to n ordered output circles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cobordism {
    components: Vec<Component>,
    inputs: Vec<CircleId>,
    outputs: Vec<CircleId>,
}

impl Cobordism {
    /// Checked constructor: every circle id must appear exactly once
    /// across component boundaries, and the global input/output lists
    /// must enumerate exactly the component inputs/outputs.
    pub fn new(
        components: Vec<Component>,
        inputs: Vec<CircleId>,
        outputs: Vec<CircleId>,
    ) -> Result<Self> {
        let mut seen = HashMap::new();
        for (idx, c) in components.iter().enumerate() {
            for &circle in c.inputs.iter().chain(&c.outputs) {
                if seen.insert(circle, idx).is_some() {
                    return Err(Error::DimensionMismatch(format!(
                        "circle {circle} appears more than once"
                    )));
                }
            }
        }
        let mut comp_inputs: Vec<CircleId> =
            components.iter().flat_map(|c| c.inputs.iter().copied()).collect();
        let mut comp_outputs: Vec<CircleId> =
            components.iter().flat_map(|c| c.outputs.iter().copied()).collect();
        comp_inputs.sort_unstable();
        comp_outputs.sort_unstable();
        let mut global_in = inputs.clone();
        let mut global_out = outputs.clone();
        global_in.sort_unstable();
        global_out.sort_unstable();
        if comp_inputs != global_in || comp_outputs != global_out {
            return Err(Error::DimensionMismatch(
                "global boundary lists do not match component boundaries".into(),
            ));
        }
        Ok(Cobordism { components, inputs, outputs })
    }

    pub fn generator(g: Generator) -> Self {
        match g {
            Generator::Unit => Cobordism {
                components: vec![Component { genus: 0, inputs: vec![], outputs: vec![0] }],
                inputs: vec![],
                outputs: vec![0],
            },
            Generator::Counit => Cobordism {
                components: vec![Component { genus: 0, inputs: vec![0], outputs: vec![] }],
                inputs: vec![0],
                outputs: vec![],
            },
            Generator::Mul => Cobordism {
                components: vec![Component { genus: 0, inputs: vec![0, 1], outputs: vec![2] }],
                inputs: vec![0, 1],
                outputs: vec![2],
            },
            Generator::Comul => Cobordism {
                components: vec![Component { genus: 0, inputs: vec![0], outputs: vec![1, 2] }],
                inputs: vec![0],
                outputs: vec![1, 2],
            },
            Generator::Id => Cobordism {
                components: vec![Component { genus: 0, inputs: vec![0], outputs: vec![1] }],
                inputs: vec![0],
                outputs: vec![1],
            },
            // two cylinders crossing: output order reverses the inputs
            Generator::Swap => Cobordism {
                components: vec![
                    Component { genus: 0, inputs: vec![0], outputs: vec![3] },
                    Component { genus: 0, inputs: vec![1], outputs: vec![2] },
                ],
                inputs: vec![0, 1],
                outputs: vec![2, 3],
            },
        }
    }

    /// The connected cobordism of the given genus with m inputs and n outputs.
    pub fn surface(genus: u32, m: usize, n: usize) -> Self {
        let inputs: Vec<CircleId> = (0..m as u32).collect();
        let outputs: Vec<CircleId> = (m as u32..(m + n) as u32).collect();
        Cobordism {
            components: vec![Component { genus, inputs: inputs.clone(), outputs: outputs.clone() }],
            inputs,
            outputs,
        }
    }

    pub fn num_inputs(&self) -> usize {
        self.inputs.len()
    }

    pub fn num_outputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Global input circles in boundary order.
    pub fn input_circles(&self) -> &[CircleId] {
        &self.inputs
    }

    /// Global output circles in boundary order.
    pub fn output_circles(&self) -> &[CircleId] {
        &self.outputs
    }

    pub fn total_euler_characteristic(&self) -> i64 {
        self.components.iter().map(Component::euler_characteristic).sum()
    }

    fn next_circle_id(&self) -> CircleId {
        self.components
            .iter()
            .flat_map(|c| c.inputs.iter().chain(&c.outputs))
            .max()
            .map_or(0, |&m| m + 1)
    }

    fn shift_ids(&self, offset: CircleId) -> Cobordism {
        let shift = |v: &[CircleId]| v.iter().map(|&c| c + offset).collect::<Vec<_>>();
        Cobordism {
            components: self
                .components
                .iter()
                .map(|c| Component {
                    genus: c.genus,
                    inputs: shift(&c.inputs),
                    outputs: shift(&c.outputs),
                })
                .collect(),
            inputs: shift(&self.inputs),
            outputs: shift(&self.outputs),
        }
    }

    /// Glues `self`'s k-th output circle to `other`'s k-th input circle.
    pub fn compose(&self, other: &Cobordism) -> Result<Cobordism> {
        if self.outputs.len() != other.inputs.len() {
            return Err(Error::ArityMismatch(format!(
                "cannot glue {} outputs to {} inputs",
                self.outputs.len(),
                other.inputs.len()
            )));
        }
        let other = other.shift_ids(self.next_circle_id());

        let total = self.components.len() + other.components.len();
        let mut uf = UnionFind::new(total);
        let mut owner: HashMap<CircleId, usize> = HashMap::new();
        for (idx, c) in self.components.iter().chain(&other.components).enumerate() {
            for &circle in c.inputs.iter().chain(&c.outputs) {
                owner.insert(circle, idx);
            }
        }
        for (&out, &inp) in self.outputs.iter().zip(&other.inputs) {
            uf.union(owner[&out], owner[&inp]);
        }

        // assemble merged components in order of first appearance
        let mut group_index: HashMap<usize, usize> = HashMap::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for idx in 0..total {
            let root = uf.find(idx);
            let slot = *group_index.entry(root).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[slot].push(idx);
        }

        let all: Vec<&Component> = self.components.iter().chain(&other.components).collect();
        let split = self.components.len();
        let mut merged = Vec::with_capacity(groups.len());
        for group in &groups {
            let chi: i64 = group.iter().map(|&i| all[i].euler_characteristic()).sum();
            let mut inputs = Vec::new();
            let mut outputs = Vec::new();
            for &i in group {
                // self-side inputs and other-side outputs survive the gluing
                if i < split {
                    inputs.extend_from_slice(&all[i].inputs);
                } else {
                    outputs.extend_from_slice(&all[i].outputs);
                }
            }
            let boundary = (inputs.len() + outputs.len()) as i64;
            let two_genus = 2 - chi - boundary;
            assert!(
                two_genus >= 0 && two_genus % 2 == 0,
                "gluing bookkeeping produced genus {two_genus}/2 (χ = {chi}, b = {boundary})"
            );
            merged.push(Component { genus: (two_genus / 2) as u32, inputs, outputs });
        }

        let glued = Cobordism {
            components: merged,
            inputs: self.inputs.clone(),
            outputs: other.outputs.clone(),
        };
        // gluing along circles (χ = 0) leaves the total characteristic alone
        assert_eq!(
            glued.total_euler_characteristic(),
            self.total_euler_characteristic() + other.total_euler_characteristic(),
            "Euler characteristic must be additive under gluing"
        );
        Ok(glued)
    }

    /// Disjoint union; `other`'s boundary circles come after `self`'s.
    pub fn tensor(&self, other: &Cobordism) -> Cobordism {
        let other = other.shift_ids(self.next_circle_id());
        let mut components = self.components.clone();
        components.extend(other.components);
        let mut inputs = self.inputs.clone();
        inputs.extend(other.inputs);
        let mut outputs = self.outputs.clone();
        outputs.extend(other.outputs);
        Cobordism { components, inputs, outputs }
    }

    /// Orientation reversal `M ↦ M*`: every in-boundary becomes an
    /// out-boundary and vice versa; genus is untouched.
    pub fn reverse(&self) -> Cobordism {
        Cobordism {
            components: self
                .components
                .iter()
                .map(|c| Component {
                    genus: c.genus,
                    inputs: c.outputs.clone(),
                    outputs: c.inputs.clone(),
                })
                .collect(),
            inputs: self.outputs.clone(),
            outputs: self.inputs.clone(),
        }
    }

    /// Canonical form: components described by the positions of their
    /// boundary circles in the global ordering, sorted. Cobordisms equal
    /// up to component reordering (and circle renaming) agree here.
    pub fn normal_form(&self) -> NormalForm {
        let pos_in: HashMap<CircleId, usize> =
            self.inputs.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let pos_out: HashMap<CircleId, usize> =
            self.outputs.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut components: Vec<NormalComponent> = self
            .components
            .iter()
            .map(|c| NormalComponent {
                genus: c.genus,
                input_slots: c.inputs.iter().map(|c| pos_in[c]).collect(),
                output_slots: c.outputs.iter().map(|c| pos_out[c]).collect(),
            })
            .collect();
        components.sort();
        NormalForm { inputs: self.inputs.len(), outputs: self.outputs.len(), components }
    }
}

/// A component keyed by global boundary positions instead of circle ids.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalComponent {
    pub genus: u32,
    pub input_slots: Vec<usize>,
    pub output_slots: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub inputs: usize,
    pub outputs: usize,
    pub components: Vec<NormalComponent>,
}

impl NormalForm {
    pub fn to_cobordism(&self) -> Cobordism {
        let m = self.inputs as u32;
        let components = self
            .components
            .iter()
            .map(|c| Component {
                genus: c.genus,
                inputs: c.input_slots.iter().map(|&s| s as u32).collect(),
                outputs: c.output_slots.iter().map(|&s| m + s as u32).collect(),
            })
            .collect();
        Cobordism {
            components,
            inputs: (0..m).collect(),
            outputs: (m..m + self.outputs as u32).collect(),
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[rb] = ra;
        }
    }
}

/// Evaluates a cobordism as a linear map `V^⊗m → V^⊗n`.
///
/// Each connected component of genus g with p inputs and q outputs
/// becomes `split_q ∘ H^g ∘ merge_p`; the component maps are tensored
/// together and conjugated by the slot permutations that reconcile the
/// component-local boundary order with the global one.
pub fn evaluate(a: &FrobeniusAlgebra, m: &Cobordism, tol: f64) -> Result<Matrix> {
    let d = a.dim().max(1);
    let (ins, outs) = (m.num_inputs(), m.num_outputs());
    let entries = d
        .checked_pow(ins as u32)
        .and_then(|r| d.checked_pow(outs as u32).and_then(|c| r.checked_mul(c)));
    match entries {
        Some(e) if e <= MAX_ENTRIES => {}
        _ => {
            return Err(Error::TooLarge(format!(
                "evaluating a {ins} → {outs} cobordism over dimension {d} needs more than {MAX_ENTRIES} matrix entries"
            )))
        }
    }

    let needs_delta = m.components.iter().any(|c| c.genus > 0 || c.outputs.len() >= 2);
    let delta = if needs_delta { Some(a.comultiplication(tol)?) } else { None };
    let needs_handle = m.components.iter().any(|c| c.genus > 0);
    let handle = if needs_handle { Some(a.handle_operator(tol)?) } else { None };
    let mu = a.mul_matrix();
    let n = a.dim();

    let mut z_all = Matrix::identity(1);
    for c in &m.components {
        let mut map = merge_map(a, &mu, c.inputs.len());
        if c.genus > 0 {
            map = handle.as_ref().unwrap().pow(c.genus as usize).mul(&map);
        }
        map = split_map(a, delta.as_ref(), c.outputs.len(), n).mul(&map);
        z_all = kron(&z_all, &map);
    }

    // reconcile boundary orders: concat-of-components vs global
    let pos_in: HashMap<CircleId, usize> =
        m.inputs.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let perm_in: Vec<usize> = m
        .components
        .iter()
        .flat_map(|c| c.inputs.iter().map(|circle| pos_in[circle]))
        .collect();
    let concat_out: Vec<CircleId> =
        m.components.iter().flat_map(|c| c.outputs.iter().copied()).collect();
    let pos_concat_out: HashMap<CircleId, usize> =
        concat_out.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let perm_out: Vec<usize> = m.outputs.iter().map(|c| pos_concat_out[c]).collect();

    let p_in = tensor_permutation(n, &perm_in);
    let p_out = tensor_permutation(n, &perm_out);
    Ok(p_out.mul(&z_all).mul(&p_in))
}

/// `μ` iterated down to one output; `merge_0 = η`, `merge_1 = id`.
fn merge_map(a: &FrobeniusAlgebra, mu: &Matrix, p: usize) -> Matrix {
    let n = a.dim();
    match p {
        0 => Matrix::column_vector(a.unit()),
        1 => Matrix::identity(n),
        _ => {
            let mut acc = mu.clone();
            for _ in 2..p {
                acc = mu.mul(&kron(&acc, &Matrix::identity(n)));
            }
            acc
        }
    }
}

/// `δ` iterated up to q outputs; `split_0 = ε`, `split_1 = id`.
fn split_map(a: &FrobeniusAlgebra, delta: Option<&Matrix>, q: usize, n: usize) -> Matrix {
    match q {
        0 => Matrix::row_vector(a.counit()),
        1 => Matrix::identity(n),
        _ => {
            let delta = delta.expect("comultiplication computed when q >= 2");
            let mut acc = delta.clone();
            for _ in 2..q {
                acc = kron(&acc, &Matrix::identity(n)).mul(delta);
            }
            acc
        }
    }
}

/// Scalar shortcut: evaluates a closed cobordism (no boundary).
pub fn evaluate_closed(a: &FrobeniusAlgebra, m: &Cobordism, tol: f64) -> Result<Scalar> {
    if m.num_inputs() != 0 || m.num_outputs() != 0 {
        return Err(Error::ArityMismatch("cobordism is not closed".into()));
    }
    Ok(evaluate(a, m, tol)?[(0, 0)])
}
