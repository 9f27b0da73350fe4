//! Homomorphisms between canonical modules, with kernels, cokernels and
//! images computed exactly on the underlying integer lattices.
//!
//! A hom is a matrix with one row per source generator acting by right
//! multiplication on row vectors.  Validity against the relation lattices of
//! both sides is checked at construction and invalid matrices are rejected,
//! never silently repaired.

use crate::fpmod::{Canonicalization, FpModule, ModuleError, Presentation};
use crate::matrix::{left_nullspace, row_basis, vec_mul, IntMat, LatticeSolver};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleHom {
    source: FpModule,
    target: FpModule,
    mat: IntMat,
}

impl ModuleHom {
    /// Builds a hom from `rows[i]` = image of source generator `i`, checking
    /// that every relation of the source maps into the relation lattice of
    /// the target.
    pub fn new(
        source: FpModule,
        target: FpModule,
        rows: Vec<Vec<i64>>,
    ) -> Result<Self, ModuleError> {
        if rows.len() != source.gen_count() {
            return Err(ModuleError::ShapeMismatch(format!(
                "hom has {} rows for {} source generators",
                rows.len(),
                source.gen_count()
            )));
        }
        source.ring().same_as(&target.ring())?;
        let mut mat = IntMat::zero(source.gen_count(), target.gen_count());
        for (i, row) in rows.iter().enumerate() {
            let reduced = target.reduce(row)?;
            for (j, &v) in reduced.iter().enumerate() {
                mat[(i, j)] = v;
            }
        }
        let hom = ModuleHom { source, target, mat };
        hom.check_relations()?;
        Ok(hom)
    }

    fn check_relations(&self) -> Result<(), ModuleError> {
        let tf = self.target.factors();
        for (i, &d) in self.source.factors().iter().enumerate() {
            for j in 0..self.target.gen_count() {
                let v = self.mat[(i, j)];
                let ok = if j < tf.len() { (d * v) % tf[j] == 0 } else { v == 0 };
                if !ok {
                    return Err(ModuleError::InvalidHom(format!(
                        "generator {i} of order {d} maps outside the relation lattice \
                         (coordinate {j} = {v})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn identity(m: &FpModule) -> Self {
        let mat = IntMat::identity(m.gen_count());
        ModuleHom { source: m.clone(), target: m.clone(), mat }
    }

    pub fn zero(source: &FpModule, target: &FpModule) -> Self {
        ModuleHom {
            source: source.clone(),
            target: target.clone(),
            mat: IntMat::zero(source.gen_count(), target.gen_count()),
        }
    }

    pub fn source(&self) -> &FpModule {
        &self.source
    }

    pub fn target(&self) -> &FpModule {
        &self.target
    }

    pub fn matrix(&self) -> &IntMat {
        &self.mat
    }

    pub fn apply(&self, x: &[i64]) -> Result<Vec<i64>, ModuleError> {
        if x.len() != self.source.gen_count() {
            return Err(ModuleError::BadElement { got: x.len(), want: self.source.gen_count() });
        }
        self.target.reduce(&vec_mul(x, &self.mat))
    }

    /// `self` followed by `g`.
    pub fn compose(&self, g: &ModuleHom) -> Result<ModuleHom, ModuleError> {
        if self.target != g.source {
            return Err(ModuleError::ShapeMismatch(
                "composition through mismatched middle module".to_string(),
            ));
        }
        let mat = &self.mat * &g.mat;
        ModuleHom::new(self.source.clone(), g.target.clone(), mat.rows_vec())
    }

    pub fn is_zero_map(&self) -> bool {
        (0..self.mat.row_count()).all(|i| {
            self.target
                .reduce(self.mat.row(i))
                .map(|r| r.iter().all(|&v| v == 0))
                .unwrap_or(false)
        })
    }

    /// Pointwise sum of two parallel homs.
    pub fn add(&self, other: &ModuleHom) -> Result<ModuleHom, ModuleError> {
        if self.source != other.source || self.target != other.target {
            return Err(ModuleError::ShapeMismatch("sum of non-parallel homs".to_string()));
        }
        let rows: Vec<Vec<i64>> = (0..self.mat.row_count())
            .map(|i| {
                self.mat
                    .row(i)
                    .iter()
                    .zip(other.mat.row(i))
                    .map(|(a, b)| a + b)
                    .collect()
            })
            .collect();
        ModuleHom::new(self.source.clone(), self.target.clone(), rows)
    }

    pub fn negate(&self) -> ModuleHom {
        let rows: Vec<Vec<i64>> =
            (0..self.mat.row_count()).map(|i| self.mat.row(i).iter().map(|&v| -v).collect()).collect();
        ModuleHom::new(self.source.clone(), self.target.clone(), rows)
            .expect("negation preserves validity")
    }
}

/// A submodule of an ambient module, presented by the sublattice that its
/// elements span in the ambient generator coordinates.
pub struct Submodule {
    pub module: FpModule,
    /// Inclusion `module -> ambient`.
    pub include: ModuleHom,
    /// Basis of the full preimage lattice (sublattice + ambient relations).
    basis: IntMat,
    canon: Canonicalization,
}

impl Submodule {
    /// Lattice basis rows in ambient generator coordinates.
    pub fn lattice_basis(&self) -> &IntMat {
        &self.basis
    }

    /// Whether an ambient lattice vector lies in the preimage lattice.
    pub fn lattice_contains(&self, v: &[i64]) -> bool {
        LatticeSolver::new(&self.basis).contains(v)
    }

    /// Factors `h : X -> ambient` through the inclusion when its image lies
    /// in the submodule, yielding `X -> module`.
    pub fn factor(&self, h: &ModuleHom) -> Result<ModuleHom, ModuleError> {
        if h.target() != self.include.target() {
            return Err(ModuleError::ShapeMismatch(
                "factoring a map into a different ambient module".to_string(),
            ));
        }
        let solver = LatticeSolver::new(&self.basis);
        let mut rows = Vec::new();
        for i in 0..h.matrix().row_count() {
            let c = solver.solve(h.matrix().row(i)).ok_or_else(|| {
                ModuleError::InvalidHom(format!(
                    "image of generator {i} does not lie in the submodule"
                ))
            })?;
            rows.push(self.canon.push(&c));
        }
        ModuleHom::new(h.source().clone(), self.module.clone(), rows)
    }
}

/// The submodule of `ambient` generated by the given lattice rows (ambient
/// relations are always included).
pub fn submodule_from_lattice(
    ambient: &FpModule,
    rows: &IntMat,
) -> Result<Submodule, ModuleError> {
    let g = ambient.gen_count();
    if rows.col_count() != g {
        return Err(ModuleError::ShapeMismatch(format!(
            "lattice rows of width {} in a module with {} generators",
            rows.col_count(),
            g
        )));
    }
    let rel = ambient.canonical_presentation();
    // Torsion coordinates only matter modulo their annihilators, and the
    // annihilator rows are stacked in below, so reduce up front to keep the
    // lattice arithmetic small.
    let mut reduced = IntMat::zero(0, g);
    for i in 0..rows.row_count() {
        reduced.push_row(&ambient.reduce(rows.row(i))?);
    }
    let full = reduced.vstack(rel.matrix());
    let basis = row_basis(&full);
    let s = basis.row_count();

    // relations of the submodule: ambient relations written in basis coords
    let solver = LatticeSolver::new(&basis);
    let mut rel_rows = IntMat::zero(0, s);
    for i in 0..rel.matrix().row_count() {
        let c = solver
            .solve(rel.matrix().row(i))
            .expect("ambient relations lie in the lattice by construction");
        rel_rows.push_row(&c);
    }
    let canon = Canonicalization::new(&Presentation::from_matrix(ambient.ring(), rel_rows));
    let module = canon.module.clone();

    let mut inc_rows = Vec::new();
    for j in 0..module.gen_count() {
        let mut e = module.zero_element();
        e[j] = 1;
        let in_basis = canon.lift(&e);
        inc_rows.push(vec_mul(&in_basis, &basis));
    }
    let include = ModuleHom::new(module.clone(), ambient.clone(), inc_rows)?;
    Ok(Submodule { module, include, basis, canon })
}

/// Kernel of `f`, as a submodule of the source.
pub fn kernel(f: &ModuleHom) -> Result<Submodule, ModuleError> {
    let gm = f.source().gen_count();
    let rel = f.target().canonical_presentation();
    // x in the kernel iff x·F is an integer combination of target relations
    let stacked = f.matrix().vstack(rel.matrix());
    let null = left_nullspace(&stacked);
    let projected = null.col_slice(0, gm);
    submodule_from_lattice(f.source(), &projected)
}

/// Cokernel of `f`: the target modulo the image, with the projection map.
pub struct Cokernel {
    pub module: FpModule,
    /// Projection `target -> module`.
    pub project: ModuleHom,
    canon: Canonicalization,
}

impl Cokernel {
    /// Factors `h : target -> Y` through the projection when it kills the
    /// image of `f`, yielding `module -> Y`.
    pub fn factor(&self, f: &ModuleHom, h: &ModuleHom) -> Result<ModuleHom, ModuleError> {
        for i in 0..f.matrix().row_count() {
            let img = h.apply(f.matrix().row(i))?;
            if img.iter().any(|&v| v != 0) {
                return Err(ModuleError::InvalidHom(
                    "map does not vanish on the image, cannot factor through the cokernel"
                        .to_string(),
                ));
            }
        }
        let mut rows = Vec::new();
        for j in 0..self.module.gen_count() {
            let mut e = self.module.zero_element();
            e[j] = 1;
            let ambient = self.canon.lift(&e);
            rows.push(vec_mul(&ambient, h.matrix()));
        }
        ModuleHom::new(self.module.clone(), h.target().clone(), rows)
    }
}

pub fn cokernel(f: &ModuleHom) -> Result<Cokernel, ModuleError> {
    let rel = f.target().canonical_presentation();
    let stacked = rel.matrix().vstack(f.matrix());
    let canon = Canonicalization::new(&Presentation::from_matrix(f.target().ring(), stacked));
    let module = canon.module.clone();
    let mut rows = Vec::new();
    for i in 0..f.target().gen_count() {
        rows.push(canon.from_original().row(i).to_vec());
    }
    let project = ModuleHom::new(f.target().clone(), module.clone(), rows)?;
    Ok(Cokernel { module, project, canon })
}

/// Image of `f`, as a submodule of the target.
pub fn image(f: &ModuleHom) -> Result<Submodule, ModuleError> {
    submodule_from_lattice(f.target(), f.matrix())
}

pub fn is_injective(f: &ModuleHom) -> Result<bool, ModuleError> {
    Ok(kernel(f)?.module.is_zero())
}

pub fn is_surjective(f: &ModuleHom) -> Result<bool, ModuleError> {
    Ok(cokernel(f)?.module.is_zero())
}

/// Direct sum with its four structure maps.
pub struct DirectSum {
    pub module: FpModule,
    pub inj_left: ModuleHom,
    pub inj_right: ModuleHom,
    pub proj_left: ModuleHom,
    pub proj_right: ModuleHom,
}

pub fn direct_sum_data(a: &FpModule, b: &FpModule) -> Result<DirectSum, ModuleError> {
    a.ring().same_as(&b.ring())?;
    let (ga, gb) = (a.gen_count(), b.gen_count());
    let ra = a.canonical_presentation();
    let rb = b.canonical_presentation();
    let mut block = IntMat::zero(0, ga + gb);
    for i in 0..ra.matrix().row_count() {
        let mut row = ra.matrix().row(i).to_vec();
        row.extend(std::iter::repeat(0).take(gb));
        block.push_row(&row);
    }
    for i in 0..rb.matrix().row_count() {
        let mut row = vec![0i64; ga];
        row.extend_from_slice(rb.matrix().row(i));
        block.push_row(&row);
    }
    let canon = Canonicalization::new(&Presentation::from_matrix(a.ring(), block));
    let module = canon.module.clone();

    let mut ia = Vec::new();
    for i in 0..ga {
        ia.push(canon.from_original().row(i).to_vec());
    }
    let mut ib = Vec::new();
    for i in 0..gb {
        ib.push(canon.from_original().row(ga + i).to_vec());
    }
    let inj_left = ModuleHom::new(a.clone(), module.clone(), ia)?;
    let inj_right = ModuleHom::new(b.clone(), module.clone(), ib)?;

    let mut pa = Vec::new();
    let mut pb = Vec::new();
    for j in 0..module.gen_count() {
        let mut e = module.zero_element();
        e[j] = 1;
        let amb = canon.lift(&e);
        pa.push(a.reduce(&amb[0..ga])?);
        pb.push(b.reduce(&amb[ga..])?);
    }
    let proj_left = ModuleHom::new(module.clone(), a.clone(), pa)?;
    let proj_right = ModuleHom::new(module.clone(), b.clone(), pb)?;

    Ok(DirectSum { module, inj_left, inj_right, proj_left, proj_right })
}
