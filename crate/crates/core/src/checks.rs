//! Identity checks on a single arrangement, each returning a description of
//! the first failure. Used by the command line and the property suites.

use crate::bspace::{BElement, BSpace, GaleMap};
use crate::classes::{circuit_class, circuit_spanning, edge_class, Subspace};
use crate::exactla::{rank, span_contains};
use crate::field::Field;

pub type Check = Result<(), String>;

fn fail(msg: String) -> Check {
    Err(msg)
}

/// `(a ∗ b) ∗ c = a ∗ (b ∗ c)` on monomials.
pub fn star_associative(sp: &BSpace) -> Check {
    for a in 0..sp.dim() {
        for b in 0..sp.dim() {
            let Some(ab) = sp.star_monomial(a, b).map_err(|e| e.to_string())? else { continue };
            for c in 0..sp.dim() {
                let left = sp.star_monomial(ab, c).map_err(|e| e.to_string())?;
                let right = match sp.star_monomial(b, c).map_err(|e| e.to_string())? {
                    Some(bc) => sp.star_monomial(a, bc).map_err(|e| e.to_string())?,
                    None => None,
                };
                if left != right {
                    return fail(format!("associativity fails at positions ({a}, {b}, {c})"));
                }
            }
        }
    }
    Ok(())
}

/// `⟨u ∗ y, x⟩ = ⟨y, u ⊣ x⟩` and `⟨y ⊢ u, z⟩ = ⟨y, z ∗ u⟩` on monomials.
pub fn adjunctions<K: Field>(k: &K, sp: &BSpace) -> Check {
    let mono = |p| BElement::monomial(k, p);
    let pair = |x: &BElement<K::Elem>, y: &BElement<K::Elem>| sp.pairing(k, x, y).map_err(|e| e.to_string());
    for u in 0..sp.dim() {
        let bu = sp.owner(u);
        for y in 0..sp.dim() {
            let by = sp.owner(y);
            if by.upper == bu.lower {
                let uy = sp.star(k, &mono(u), &mono(y)).map_err(|e| e.to_string())?;
                let target = sp.block(by.lower, bu.upper).expect("composable blocks");
                for x in target.positions() {
                    let lhs = pair(&uy, &mono(x))?;
                    let rhs = pair(&mono(y), &sp.ladj(k, &mono(u), &mono(x)))?;
                    if lhs != rhs {
                        return fail(format!("left adjunction fails for u={u}, y={y}, x={x}"));
                    }
                }
            }
            if by.lower == bu.lower && sp.poset().le(bu.upper, by.upper) {
                let yu = sp.radj(k, &mono(y), &mono(u));
                let zb = sp.block(bu.upper, by.upper).expect("comparable flats");
                for z in zb.positions() {
                    let lhs = pair(&yu, &mono(z))?;
                    let zu = sp.star(k, &mono(z), &mono(u)).map_err(|e| e.to_string())?;
                    let rhs = pair(&mono(y), &zu)?;
                    if lhs != rhs {
                        return fail(format!("right adjunction fails for y={y}, u={u}, z={z}"));
                    }
                }
            }
        }
    }
    Ok(())
}

/// `⟨e_B, e_B'⟩ = (−1)^d δ_{B,B'}` within each block.
pub fn pairing_formula<K: Field>(k: &K, sp: &BSpace) -> Check {
    for blk in sp.blocks() {
        let sign = if blk.rank() % 2 == 1 { k.neg(&k.one()) } else { k.one() };
        for a in blk.positions() {
            for b in blk.positions() {
                let got =
                    sp.pairing(k, &BElement::monomial(k, a), &BElement::monomial(k, b)).map_err(|e| e.to_string())?;
                let want = if a == b { sign.clone() } else { k.zero() };
                if got != want {
                    return fail(format!("pairing of positions {a}, {b} is {got}"));
                }
            }
        }
    }
    Ok(())
}

/// `Γ(x ∗ y) = Γ(y) ∗ Γ(x)` on monomials and `Γ ∘ Γ = id`.
pub fn gale_map(sp: &BSpace) -> Check {
    let dual = BSpace::build(&sp.arrangement().gale_dual()).map_err(|e| e.to_string())?;
    let back = BSpace::build(&dual.arrangement().gale_dual()).map_err(|e| e.to_string())?;
    let g = GaleMap::new(sp, &dual).map_err(|e| e.to_string())?;
    let h = GaleMap::new(&dual, &back).map_err(|e| e.to_string())?;
    for p in 0..sp.dim() {
        if h.apply_position(g.apply_position(p)) != p {
            return fail(format!("Γ∘Γ moves position {p}"));
        }
    }
    for a in 0..sp.dim() {
        for b in 0..sp.dim() {
            let lhs = sp.star_monomial(a, b).map_err(|e| e.to_string())?.map(|x| g.apply_position(x));
            let rhs = dual.star_monomial(g.apply_position(b), g.apply_position(a)).map_err(|e| e.to_string())?;
            if lhs != rhs {
                return fail(format!("Γ does not reverse the product of positions {a}, {b}"));
            }
        }
    }
    Ok(())
}

/// `U^F_E ∗ U^E_D ⊆ U^F_D`.
pub fn u_star_closed<K: Field>(k: &K, sp: &BSpace, u: &[Subspace<K>]) -> Check {
    for (b1, x) in sp.blocks().iter().enumerate() {
        for (b2, y) in sp.blocks().iter().enumerate() {
            if x.lower != y.upper {
                continue;
            }
            let target = sp.block_id(y.lower, x.upper).expect("composable blocks");
            for ux in u[b1].elements(k, sp) {
                for uy in u[b2].elements(k, sp) {
                    let prod = sp.star(k, &ux, &uy).map_err(|e| e.to_string())?;
                    if !u[target].contains(k, &sp.to_local(k, target, &prod)) {
                        return fail(format!("product of blocks {b1} and {b2} leaves U"));
                    }
                }
            }
        }
    }
    Ok(())
}

/// `⟨α_X, u_C⟩ = 0` for every circuit `C` of a block and edge `X` of the
/// block the circuit class lands in.
pub fn edge_circuit_orthogonal<K: Field>(k: &K, sp: &BSpace) -> Check {
    for (b, blk) in sp.blocks().iter().enumerate() {
        for c in blk.minor.circuits() {
            let (fc, uc) = circuit_class(k, sp, b, c).map_err(|e| e.to_string())?;
            let target = sp.block_id(fc, blk.upper).expect("circuit closure lies below the upper flat");
            for x in sp.blocks()[target].minor.edges() {
                let alpha = edge_class(k, sp, target, x).map_err(|e| e.to_string())?;
                let v = sp.pairing(k, &alpha, &uc).map_err(|e| e.to_string())?;
                if !k.is_zero(&v) {
                    return fail(format!("⟨α_{x}, u_{c}⟩ = {v}"));
                }
            }
        }
    }
    Ok(())
}

/// Circuit products have the internally passive bases as distinct leading
/// terms and span `U`.
pub fn circuit_products_span<K: Field>(k: &K, sp: &BSpace, u: &[Subspace<K>]) -> Check {
    for (b, blk) in sp.blocks().iter().enumerate() {
        let prods = circuit_spanning(k, sp, b).map_err(|e| e.to_string())?;
        let leads: Vec<_> = prods.iter().filter_map(|x| x.leading(sp)).map(|(p, _)| sp.index(p).basis).collect();
        if leads != blk.minor.internally_passive_bases(None) {
            return fail(format!("leading terms in block {b} are not the passive bases"));
        }
        let vs: Vec<_> = prods.iter().map(|x| sp.to_local(k, b, x)).collect();
        if rank(k, &vs, blk.dim()) != u[b].dim() || !span_contains(k, &u[b].basis, &vs, blk.dim()) {
            return fail(format!("circuit products do not span U in block {b}"));
        }
    }
    Ok(())
}
