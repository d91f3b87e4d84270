use crate::error::{Error, Result};
use crate::exact::{to_sparse, QMatrix, Rational, RealSpan};
use crate::realizations::InvolutionRecipe;

use super::RealFormAlgebra;

/// A real-linear endomorphism of an algebra, stored by its matrix on the
/// algebra's basis (column `j` is the image of `e_j`).
#[derive(Clone, Debug)]
pub struct LinearAlgebraMap {
    pub name: String,
    action: QMatrix,
    recipe: Option<InvolutionRecipe>,
}

impl LinearAlgebraMap {
    /// Restricts a matrix recipe to `g`, failing if some basis image leaves `g`.
    pub fn from_recipe(g: &RealFormAlgebra, recipe: &InvolutionRecipe) -> Result<Self> {
        if recipe.size() != g.ambient_size() {
            return Err(Error::ShapeMismatch(format!(
                "recipe `{}` has size {}, algebra lives in gl({})",
                recipe.name,
                recipe.size(),
                g.ambient_size()
            )));
        }
        let d = g.dim();
        let mut cols = Vec::with_capacity(d);
        for (index, b) in g.basis().iter().enumerate() {
            let img = recipe.apply(b);
            let c = g.coordinates(&img).ok_or_else(|| Error::NotStabilized { map: recipe.name.clone(), index })?;
            cols.push(c);
        }
        Ok(LinearAlgebraMap {
            name: recipe.name.clone(),
            action: QMatrix::from_columns(&cols, d),
            recipe: Some(recipe.clone()),
        })
    }

    pub fn from_action(name: impl Into<String>, action: QMatrix) -> Self {
        LinearAlgebraMap { name: name.into(), action, recipe: None }
    }

    pub fn identity(g: &RealFormAlgebra) -> Self {
        Self::from_action("id", QMatrix::identity(g.dim()))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn action(&self) -> &QMatrix {
        &self.action
    }

    pub fn recipe(&self) -> Option<&InvolutionRecipe> {
        self.recipe.as_ref()
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.action.mul_vec(x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearAlgebraMap) -> Result<Self> {
        let recipe = match (&self.recipe, &other.recipe) {
            (Some(a), Some(b)) => Some(a.compose(b)?),
            _ => None,
        };
        Ok(LinearAlgebraMap {
            name: format!("{}∘{}", self.name, other.name),
            action: self.action.mul(&other.action),
            recipe,
        })
    }

    pub fn is_involution(&self) -> bool {
        self.action.mul(&self.action).is_identity()
    }

    pub fn check_involution(&self) -> Result<()> {
        if self.is_involution() {
            Ok(())
        } else {
            Err(Error::NotInvolution(self.name.clone()))
        }
    }

    /// Checks `φ[e_i, e_j] = [φe_i, φe_j]` for all basis pairs.
    pub fn check_automorphism(&self, g: &RealFormAlgebra) -> Result<()> {
        let d = g.dim();
        let images: Vec<_> = (0..d).map(|j| to_sparse(&self.action.column(j))).collect();
        for i in 0..d {
            for j in i + 1..d {
                let lhs = self.action.mul_sparse(g.structure(i, j));
                let rhs = g.bracket_sparse(&images[i], &images[j]);
                if lhs != rhs {
                    return Err(Error::NotAutomorphism { map: self.name.clone(), i, j });
                }
            }
        }
        Ok(())
    }

    pub fn commutes_with(&self, other: &LinearAlgebraMap) -> bool {
        self.action.mul(&other.action) == other.action.mul(&self.action)
    }
}

/// The `sign`-eigenspace of an involution, in algebra coordinates.
pub fn fixed_subspace(g: &RealFormAlgebra, map: &LinearAlgebraMap, sign: i8) -> Result<RealSpan> {
    multi_fixed(g, &[(map, sign)])
}

/// Joint eigenspace `{x : φ_k x = s_k x}` of several involutions.
pub fn multi_fixed(g: &RealFormAlgebra, conds: &[(&LinearAlgebraMap, i8)]) -> Result<RealSpan> {
    let d = g.dim();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (map, sign) in conds {
        map.check_involution()?;
        let s = Rational::from_integer(*sign as i64);
        let shifted = map.action.sub(&QMatrix::identity(d).scale(&s));
        rows.extend(shifted.to_rows().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
    }
    if rows.is_empty() {
        return Ok(RealSpan::full(d));
    }
    Ok(RealSpan::kernel_of(&QMatrix::from_rows(&rows)))
}
