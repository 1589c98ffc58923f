use super::{Category, Combo};
use crate::linalg::{Field, Matrix};

/// A (possibly graded) functor `X -> Vect`: one space per object and
/// internal degree, one matrix per basis morphism and degree.
///
/// Ungraded data uses a single degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub field: Field,
    /// `dims[x][d]`
    pub dims: Vec<Vec<usize>>,
    /// `actions[m][d]`: `dims[src(m)][d] -> dims[dst(m)][d]`
    pub actions: Vec<Vec<Matrix>>,
}

impl Representation {
    pub fn levels(&self) -> usize {
        self.dims.first().map_or(0, Vec::len)
    }

    pub fn dim(&self, x: usize, d: usize) -> usize {
        self.dims[x][d]
    }

    pub fn total_dim(&self, x: usize) -> usize {
        self.dims[x].iter().sum()
    }

    /// Zero functor with the given number of degrees.
    pub fn zero(cat: &Category, levels: usize) -> Representation {
        Representation::constant_dims(cat, vec![vec![0; levels]; cat.object_count()])
    }

    /// Functor with given dimensions and all actions zero; callers fill in
    /// the actions afterwards.
    pub fn constant_dims(cat: &Category, dims: Vec<Vec<usize>>) -> Representation {
        let levels = dims.first().map_or(0, Vec::len);
        let actions = cat
            .morphisms
            .iter()
            .map(|m| {
                (0..levels)
                    .map(|d| Matrix::zeros(cat.field, dims[m.target][d], dims[m.source][d]))
                    .collect()
            })
            .collect();
        Representation { field: cat.field, dims, actions }
    }

    /// Action of a linear combination of morphisms `x -> y` in degree `d`.
    pub fn act(&self, cat: &Category, c: &Combo, x: usize, y: usize, d: usize) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.dims[y][d], self.dims[x][d]);
        for (id, coeff) in c {
            let m = &cat.morphisms[*id];
            debug_assert!(m.source == x && m.target == y, "combination outside hom(x, y)");
            out.add_scaled(&self.actions[*id][d], coeff);
        }
        out
    }

    /// Collapse all degrees into one (block-diagonal actions).
    pub fn totalize(&self) -> Representation {
        let dims = self.dims.iter().map(|ds| vec![ds.iter().sum()]).collect();
        let actions = self
            .actions
            .iter()
            .map(|per_degree| {
                let blocks: Vec<&Matrix> = per_degree.iter().collect();
                vec![Matrix::block_diag(self.field, &blocks)]
            })
            .collect();
        Representation { field: self.field, dims, actions }
    }
}

/// The unit of Day convolution, `I = X(1, -)`, acting by composition.
pub fn identity_functor(cat: &Category) -> Representation {
    let n = cat.object_count();
    let dims: Vec<Vec<usize>> = (0..n).map(|x| vec![cat.hom(cat.unit, x).len()]).collect();
    let mut rep = Representation::constant_dims(cat, dims);
    for (id, m) in cat.morphisms.iter().enumerate() {
        let src_basis = cat.hom(cat.unit, m.source);
        let dst_basis = cat.hom(cat.unit, m.target);
        let mut entries = Vec::new();
        for (j, &f) in src_basis.iter().enumerate() {
            let image = cat.compose(&cat.basis_combo(id), &cat.basis_combo(f));
            for (g, c) in image {
                let i = dst_basis.iter().position(|&b| b == g).expect("composite in hom(1, y)");
                entries.push((i, j, c));
            }
        }
        rep.actions[id][0] = Matrix::from_triplets(cat.field, dst_basis.len(), src_basis.len(), entries);
    }
    rep
}
