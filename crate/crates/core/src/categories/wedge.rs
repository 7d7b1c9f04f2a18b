use super::{FinCat, Functor, MorphismSpec};
use crate::error::{Error, Result};
use crate::presentations::FinMonoid;

/// `End_C(x) ∨ ⋁_{y≠x} [c_y]` together with mutually inverse functors to and
/// from `C`.
///
/// The wedge is built in normal form: a morphism `y -> z` is a triple
/// `(y, e, z)` with `e ∈ End(x)`, standing for `c_z ∘ e ∘ c_y⁻¹`, and
/// `(y, e, z)` then `(z, e', w)` is `(y, e·e', w)`. It depends only on the
/// monoid `End(x)` and the object set.
#[derive(Clone, Debug)]
pub struct WedgeCertificate {
    pub wedge: FinCat,
    pub end_monoid: FinMonoid,
    /// `ι: W -> C`, `(y, e, z) ↦ c_z ∘ e ∘ c_y⁻¹`.
    pub iota: Functor,
    /// `γ: C -> W`, `d ↦ (y, c_z⁻¹ ∘ d ∘ c_y, z)`.
    pub gamma: Functor,
}

impl WedgeCertificate {
    pub fn verify(&self, c: &FinCat) -> std::result::Result<(), String> {
        self.iota.check(&self.wedge, c).map_err(|e| format!("ι: {e}"))?;
        self.gamma.check(c, &self.wedge).map_err(|e| format!("γ: {e}"))?;
        if self.iota.then(&self.gamma) != Functor::identity(&self.wedge) {
            return Err("γ∘ι is not the identity".into());
        }
        if self.gamma.then(&self.iota) != Functor::identity(c) {
            return Err("ι∘γ is not the identity".into());
        }
        Ok(())
    }
}

/// Picks an isomorphism `x -> y` for every object `y`; `c[x]` is the identity.
pub fn choose_isos(c: &FinCat, x: usize) -> Result<Vec<usize>> {
    if !c.is_connected() {
        return Err(Error::NotConnectedOrNotEquivalent);
    }
    (0..c.num_objects())
        .map(|y| if y == x { Ok(c.identity(x)) } else { c.find_iso(x, y).ok_or(Error::NotConnectedOrNotEquivalent) })
        .collect()
}

pub fn wedge_decompose(c: &FinCat, x: usize, isos: &[usize]) -> Result<WedgeCertificate> {
    if !c.is_connected() || !c.equivalent_to_totally_disconnected() {
        return Err(Error::NotConnectedOrNotEquivalent);
    }
    let no = c.num_objects();
    if isos.len() != no {
        return Err(Error::BadIsoFamily("need one isomorphism per object".into()));
    }
    let mut inv = Vec::with_capacity(no);
    for (y, &cy) in isos.iter().enumerate() {
        if cy >= c.num_morphisms() || c.src(cy) != x || c.tgt(cy) != y {
            return Err(Error::BadIsoFamily(format!("c_{} is not a morphism x -> {}", c.object_name(y), c.object_name(y))));
        }
        inv.push(c.inverse(cy).ok_or_else(|| Error::BadIsoFamily(format!("c_{} is not invertible", c.object_name(y))))?);
    }
    if isos[x] != c.identity(x) {
        return Err(Error::BadIsoFamily("c_x must be the identity".into()));
    }
    let (end, elems) = c.end_monoid(x);
    let k = end.size();
    let elem_of = |f: usize| elems.iter().position(|&e| e == f).expect("endomorphism of x");
    let id = |y: usize, e: usize, z: usize| (y * no + z) * k + e;
    let mut morphisms = Vec::with_capacity(no * no * k);
    for y in 0..no {
        for z in 0..no {
            for e in 0..k {
                let name = if y == x && z == x {
                    c.morphism_name(elems[e]).to_string()
                } else {
                    format!("({},{},{})", c.object_name(y), c.morphism_name(elems[e]), c.object_name(z))
                };
                morphisms.push(MorphismSpec { name, src: y, tgt: z });
            }
        }
    }
    let triple = |m: usize| ((m / k) / no, m % k, (m / k) % no);
    let wedge = FinCat::new(
        (0..no).map(|o| c.object_name(o).to_string()).collect(),
        morphisms,
        (0..no).map(|y| id(y, end.identity(), y)).collect(),
        |f, g| {
            let ((y, e, _), (_, e2, w)) = (triple(f), triple(g));
            id(y, end.mul(e, e2), w)
        },
        c.basepoint(),
    )
    .map_err(|e| Error::EquivalenceViolated(e.to_string()))?;
    let comp = |f: usize, g: usize| c.then(f, g).expect("composable");
    let iota = Functor {
        objects: (0..no).collect(),
        morphisms: (0..wedge.num_morphisms())
            .map(|m| {
                let (y, e, z) = triple(m);
                comp(comp(inv[y], elems[e]), isos[z])
            })
            .collect(),
    };
    let gamma = Functor {
        objects: (0..no).collect(),
        morphisms: (0..c.num_morphisms())
            .map(|d| {
                let (y, z) = (c.src(d), c.tgt(d));
                id(y, elem_of(comp(comp(isos[y], d), inv[z])), z)
            })
            .collect(),
    };
    let cert = WedgeCertificate { wedge, end_monoid: end, iota, gamma };
    cert.verify(c).map_err(Error::EquivalenceViolated)?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_object_is_trivial_decomposition() {
        let c = FinCat::from_monoid(&FinMonoid::cyclic(3));
        let cert = wedge_decompose(&c, 0, &choose_isos(&c, 0).unwrap()).unwrap();
        assert_eq!(cert.wedge.num_morphisms(), 3);
    }

    #[test]
    fn contractible_groupoid() {
        let c = FinCat::iso_pair();
        let cert = wedge_decompose(&c, 0, &choose_isos(&c, 0).unwrap()).unwrap();
        assert_eq!(cert.end_monoid.size(), 1);
        assert_eq!(cert.wedge.num_morphisms(), 4);
    }

    #[test]
    fn arrow_is_rejected() {
        let c = FinCat::poset(1);
        assert!(matches!(wedge_decompose(&c, 0, &[0, 1]), Err(Error::NotConnectedOrNotEquivalent)));
        let d = FinCat::discrete(2);
        assert!(matches!(choose_isos(&d, 0), Err(Error::NotConnectedOrNotEquivalent)));
    }

    #[test]
    fn non_iso_family_is_rejected() {
        let c = FinCat::iso_pair();
        assert!(matches!(wedge_decompose(&c, 0, &[0, 0]), Err(Error::BadIsoFamily(_))));
    }
}
