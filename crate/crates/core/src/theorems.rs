//! Verification of the monodromy/rotation-group relationship on a concrete surface.
//!
//! Two failure channels are kept apart: a failed *flag* in a
//! [`VerificationReport`] is an audit finding about the surface, while an
//! `Err(Error::Invariant(..))` means this crate computed something inconsistent.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permgroup::{quotient_by_normal, Permutation, PermutationGroup};
use crate::surface::{Pair, SchlafliSymbol, TiledSurface};
use crate::unfolding::{
    deck_transformations, k_prime, monodromy_group, unfold, MonodromySetup, ParityClass,
    UnfoldedSurface,
};

/// Denominator of the lower bound `mp / denom` on the monodromy order.
pub fn mon_lower_bound_denominator(sym: SchlafliSymbol) -> usize {
    use ParityClass::*;
    let d = sym.d();
    match (ParityClass::of(sym.p), ParityClass::of(sym.q)) {
        (Odd, Odd) | (ZeroMod4, _) => d,
        (Odd, _) | (TwoMod4, Odd) => 2 * d,
        (TwoMod4, _) => d,
    }
}

/// Lower bound on the monodromy order for a surface with `m` faces.
pub fn mon_lower_bound(sym: SchlafliSymbol, m: usize) -> usize {
    m * sym.p / mon_lower_bound_denominator(sym)
}

/// Upper bound on the order of the cyclic quotient of the rotation group.
pub fn quotient_upper_bound(sym: SchlafliSymbol) -> usize {
    mon_lower_bound_denominator(sym)
}

/// Hypothesis under which the monodromy group should be the full rotation group:
/// `gcd(p, q) = 1` and either 4 divides `p` or `q`, or both are odd.
pub fn gcd1_hypothesis(sym: SchlafliSymbol) -> bool {
    sym.d() == 1 && (sym.p % 4 == 0 || sym.q % 4 == 0 || (sym.p % 2 == 1 && sym.q % 2 == 1))
}

/// The image of the deck group inside the rotation group of the base surface.
#[derive(Clone, Debug)]
pub struct InducedSubgroup {
    /// Induced pair permutation of each deck transformation, by sheet.
    pub elements: Vec<Permutation>,
    pub group: PermutationGroup,
}

/// Projects every deck transformation of the unfolding to a rotation of the base.
///
/// A deck transformation sending cover face `(f, t)` to `(f', t')` rotates slot
/// `a` of `f` to slot `a + (t - t')/2` of `f'`; the offset must not depend on
/// which class over `f` is used.
pub fn induced_subgroup(
    u: &UnfoldedSurface,
    deck: &[Permutation],
    rot: &PermutationGroup,
) -> Result<InducedSubgroup> {
    let base = u.base();
    let p = base.p();
    let modulus = 2 * p;
    let mut elements = Vec::with_capacity(deck.len());
    for (sheet, delta) in deck.iter().enumerate() {
        let mut face_map: Vec<Option<(usize, usize)>> = vec![None; base.face_count()];
        for (i, cf) in u.faces().iter().enumerate() {
            let img = u.faces()[delta.apply(i)];
            let diff = (cf.class + modulus - img.class) % modulus;
            if diff % 2 != 0 {
                return Err(Error::ProjectionInconsistent {
                    sheet,
                    face: cf.face,
                });
            }
            let entry = (img.face, diff / 2);
            match face_map[cf.face] {
                None => face_map[cf.face] = Some(entry),
                Some(prev) if prev == entry => {}
                Some(_) => {
                    return Err(Error::ProjectionInconsistent {
                        sheet,
                        face: cf.face,
                    })
                }
            }
        }
        let images = base
            .pairs()
            .map(|x| {
                let (g, offset) = face_map[x.face].expect("every base face is covered");
                base.index(Pair::new(g, (x.slot + offset) % p))
            })
            .collect();
        let induced =
            Permutation::from_images(images).map_err(|_| Error::NotInRotationGroup { sheet })?;
        if !rot.contains(&induced)? {
            return Err(Error::NotInRotationGroup { sheet });
        }
        elements.push(induced);
    }
    let group = PermutationGroup::from_elements(base.pair_count(), &elements)?;
    let mut distinct = elements.clone();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != deck.len() || group.order() != deck.len() as u128 {
        return Err(Error::invariant(format!(
            "{} deck transformations induce {} distinct rotations generating a group of order {}",
            deck.len(),
            distinct.len(),
            group.order()
        )));
    }
    Ok(InducedSubgroup { elements, group })
}

/// Outcome of every check on one surface. Fields that do not apply are `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub symbol: Option<SchlafliSymbol>,
    pub m: usize,
    pub d: Option<usize>,
    pub k_prime: Option<usize>,
    pub k: Option<usize>,
    pub mon_order: Option<u64>,
    pub rot_order: Option<u64>,
    pub n_order: Option<u64>,
    pub quotient_order: Option<u64>,
    pub rotary: bool,
    pub k_prime_divides_k: Option<bool>,
    pub k_bound_ok: Option<bool>,
    pub mon_order_formula_ok: Option<bool>,
    pub rot_order_mp_ok: Option<bool>,
    pub n_is_subgroup: Option<bool>,
    pub n_normal: Option<bool>,
    pub quotient_cyclic: Option<bool>,
    pub table2_lower_bound_ok: Option<bool>,
    pub table3_upper_bound_ok: Option<bool>,
    pub gcd1_hypothesis_holds: Option<bool>,
    pub gcd1_conclusion_holds: Option<bool>,
    pub projection_well_defined: Option<bool>,
}

impl VerificationReport {
    fn empty(m: usize) -> Self {
        VerificationReport {
            symbol: None,
            m,
            d: None,
            k_prime: None,
            k: None,
            mon_order: None,
            rot_order: None,
            n_order: None,
            quotient_order: None,
            rotary: false,
            k_prime_divides_k: None,
            k_bound_ok: None,
            mon_order_formula_ok: None,
            rot_order_mp_ok: None,
            n_is_subgroup: None,
            n_normal: None,
            quotient_cyclic: None,
            table2_lower_bound_ok: None,
            table3_upper_bound_ok: None,
            gcd1_hypothesis_holds: None,
            gcd1_conclusion_holds: None,
            projection_well_defined: None,
        }
    }

    /// Named boolean flags, in field order. `gcd1_hypothesis_holds` is not a
    /// pass/fail flag and is left out.
    pub fn flags(&self) -> Vec<(&'static str, Option<bool>)> {
        vec![
            ("rotary", Some(self.rotary)),
            ("k_prime_divides_k", self.k_prime_divides_k),
            ("k_bound_ok", self.k_bound_ok),
            ("mon_order_formula_ok", self.mon_order_formula_ok),
            ("rot_order_mp_ok", self.rot_order_mp_ok),
            ("n_is_subgroup", self.n_is_subgroup),
            ("n_normal", self.n_normal),
            ("quotient_cyclic", self.quotient_cyclic),
            ("table2_lower_bound_ok", self.table2_lower_bound_ok),
            ("table3_upper_bound_ok", self.table3_upper_bound_ok),
            ("gcd1_conclusion_holds", self.gcd1_conclusion_holds),
            ("projection_well_defined", self.projection_well_defined),
        ]
    }

    /// Whether no computed flag failed.
    pub fn all_pass(&self) -> bool {
        self.flags().iter().all(|(_, v)| *v != Some(false))
    }

    /// Names of failed flags.
    pub fn failures(&self) -> Vec<&'static str> {
        self.flags()
            .into_iter()
            .filter(|(_, v)| *v == Some(false))
            .map(|(name, _)| name)
            .collect()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn opt<T: fmt::Display>(v: &Option<T>) -> String {
            v.as_ref()
                .map_or_else(|| "-".to_string(), |x| x.to_string())
        }
        fn flag(v: Option<bool>) -> &'static str {
            match v {
                Some(true) => "pass",
                Some(false) => "FAIL",
                None => "-",
            }
        }
        let rows: Vec<(&str, String)> = vec![
            ("symbol", opt(&self.symbol)),
            ("m", self.m.to_string()),
            ("d", opt(&self.d)),
            ("k_prime", opt(&self.k_prime)),
            ("k", opt(&self.k)),
            ("mon_order", opt(&self.mon_order)),
            ("rot_order", opt(&self.rot_order)),
            ("n_order", opt(&self.n_order)),
            ("quotient_order", opt(&self.quotient_order)),
            ("gcd1_hypothesis_holds", opt(&self.gcd1_hypothesis_holds)),
        ];
        for (name, value) in rows {
            writeln!(f, "{name:<26}{value}")?;
        }
        for (name, value) in self.flags() {
            writeln!(f, "{name:<26}{}", flag(value))?;
        }
        Ok(())
    }
}

/// Everything computed once per rotary surface.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub surface: TiledSurface,
    pub symbol: SchlafliSymbol,
    pub unfolded: UnfoldedSurface,
    pub monodromy: MonodromySetup,
    pub mon: PermutationGroup,
    pub rot: PermutationGroup,
    /// `None` when the deck group cannot be projected to the base surface.
    pub induced: Option<InducedSubgroup>,
}

impl Analysis {
    /// Runs the pipeline. Fails with [`Error::NotRegular`] or [`Error::NotRotary`]
    /// when the surface is outside the scope of the checks.
    pub fn new(surface: &TiledSurface) -> Result<Self> {
        let symbol = surface.schlafli()?;
        let rot = surface.rotation_group()?;
        if rot.order() != surface.pair_count() as u128 {
            return Err(Error::NotRotary);
        }
        let unfolded = unfold(surface)?;
        let (monodromy, mon) = monodromy_group(&unfolded)?;
        let induced = match deck_transformations(&unfolded)
            .and_then(|deck| induced_subgroup(&unfolded, &deck, &rot))
        {
            Ok(n) => Some(n),
            Err(
                Error::NormalityFailure { .. }
                | Error::ProjectionInconsistent { .. }
                | Error::NotInRotationGroup { .. },
            ) => None,
            Err(e) => return Err(e),
        };
        Ok(Analysis {
            surface: surface.clone(),
            symbol,
            unfolded,
            monodromy,
            mon,
            rot,
            induced,
        })
    }

    fn report(&self) -> Result<VerificationReport> {
        let mut r = VerificationReport::empty(self.surface.face_count());
        r.symbol = Some(self.symbol);
        r.d = Some(self.symbol.d());
        r.k_prime = Some(k_prime(self.symbol));
        r.k = Some(self.unfolded.k());
        r.mon_order = Some(to_u64(self.mon.order())?);
        r.rot_order = Some(to_u64(self.rot.order())?);
        r.rotary = true;
        r.projection_well_defined = Some(self.induced.is_some());
        Ok(r)
    }

    fn fill_main(&self, r: &mut VerificationReport) -> Result<()> {
        let Some(induced) = &self.induced else {
            return Ok(());
        };
        let n = &induced.group;
        r.n_order = Some(to_u64(n.order())?);
        let is_subgroup = n.is_subgroup_of(&self.rot)?;
        r.n_is_subgroup = Some(is_subgroup);
        if !is_subgroup {
            return Ok(());
        }
        let normal = n.is_normal_in(&self.rot)?;
        r.n_normal = Some(normal);
        if !normal {
            return Ok(());
        }
        let quotient = quotient_by_normal(&self.rot, n)?;
        r.quotient_order = Some(quotient.order() as u64);
        r.quotient_cyclic = Some(quotient.is_cyclic());

        if quotient.order() as u128 * n.order() != self.rot.order() {
            return Err(Error::invariant(
                "quotient order times |N| differs from |Rot|",
            ));
        }
        if self.rot.order() == self.surface.pair_count() as u128 {
            let p = self.symbol.p;
            let k = self.unfolded.k();
            let expected = if p % 2 == 0 { p / k } else { 2 * p / k };
            if quotient.order() != expected {
                return Err(Error::invariant(format!(
                    "quotient order {} differs from {expected} implied by k = {k}",
                    quotient.order()
                )));
            }
        }
        Ok(())
    }

    fn fill_bounds(&self, r: &mut VerificationReport) -> Result<()> {
        let sym = self.symbol;
        let p = sym.p;
        let m = self.surface.face_count();
        let k = self.unfolded.k();
        let mon = self.mon.order();
        r.k_prime_divides_k = Some(k % k_prime(sym) == 0);
        r.k_bound_ok = Some(if p % 2 == 0 { k <= p } else { k <= 2 * p });
        let formula = if p % 2 == 0 { k * m } else { k * m / 2 };
        r.mon_order_formula_ok = Some(mon == formula as u128);
        r.rot_order_mp_ok = Some(self.rot.order() == (m * p) as u128);
        r.table2_lower_bound_ok =
            Some(mon * mon_lower_bound_denominator(sym) as u128 >= (m * p) as u128);
        if r.quotient_order.is_none() {
            self.fill_main(r)?;
        }
        r.table3_upper_bound_ok = r
            .quotient_order
            .map(|qo| qo <= quotient_upper_bound(sym) as u64);
        Ok(())
    }

    fn fill_gcd1(&self, r: &mut VerificationReport) -> Result<()> {
        let holds = gcd1_hypothesis(self.symbol);
        r.gcd1_hypothesis_holds = Some(holds);
        if holds {
            let same_order = self.mon.order() == self.rot.order();
            let n_is_rot = match &self.induced {
                Some(n) => {
                    n.group.order() == self.rot.order() && n.group.is_subgroup_of(&self.rot)?
                }
                None => false,
            };
            r.gcd1_conclusion_holds = Some(same_order && n_is_rot);
        }
        Ok(())
    }
}

fn to_u64(x: u128) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::invariant("group order exceeds u64"))
}

/// Normality of `N` in `Rot(D)` and cyclicity of the quotient.
pub fn verify_main_theorem(surface: &TiledSurface) -> Result<VerificationReport> {
    let a = Analysis::new(surface)?;
    let mut r = a.report()?;
    a.fill_main(&mut r)?;
    Ok(r)
}

/// Degree bounds, order formulas and the closed-form table bounds.
pub fn verify_bounds(surface: &TiledSurface) -> Result<VerificationReport> {
    let a = Analysis::new(surface)?;
    let mut r = a.report()?;
    a.fill_bounds(&mut r)?;
    Ok(r)
}

/// Whether the monodromy group is the whole rotation group when `gcd(p, q) = 1`
/// and either 4 divides `p` or `q`, or both are odd. Reports rather than asserts.
pub fn verify_gcd1(surface: &TiledSurface) -> Result<VerificationReport> {
    let a = Analysis::new(surface)?;
    let mut r = a.report()?;
    a.fill_gcd1(&mut r)?;
    Ok(r)
}

/// Every check. Non-regular or non-rotary surfaces give a report with
/// `rotary = false` and no theorem fields; only internal inconsistencies are errors.
pub fn full_report(surface: &TiledSurface) -> Result<VerificationReport> {
    match Analysis::new(surface) {
        Ok(a) => {
            let mut r = a.report()?;
            a.fill_main(&mut r)?;
            a.fill_bounds(&mut r)?;
            a.fill_gcd1(&mut r)?;
            Ok(r)
        }
        Err(Error::NotRegular { .. } | Error::NotRotary | Error::InvalidSymbol { .. }) => {
            let mut r = VerificationReport::empty(surface.face_count());
            if let Ok(sym) = surface.schlafli() {
                r.symbol = Some(sym);
                r.d = Some(sym.d());
                r.k_prime = Some(k_prime(sym));
            }
            r.rot_order = Some(to_u64(surface.rotation_group()?.order())?);
            Ok(r)
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn torus_main_theorem() {
        let r = verify_main_theorem(&catalog::pi_p(4).unwrap()).unwrap();
        assert_eq!(r.n_order, Some(1));
        assert_eq!(r.quotient_order, Some(4));
        assert_eq!(r.n_normal, Some(true));
        assert_eq!(r.quotient_cyclic, Some(true));
    }

    #[test]
    fn dodecahedron_main_theorem() {
        let r = verify_main_theorem(&catalog::platonic_solid("dodecahedron").unwrap()).unwrap();
        assert_eq!(r.n_order, Some(60));
        assert_eq!(r.rot_order, Some(60));
        assert_eq!(r.quotient_order, Some(1));
        assert_eq!(r.quotient_cyclic, Some(true));
    }

    #[test]
    fn bounds_on_bolza_and_dodecahedron() {
        let r = verify_bounds(&catalog::bolza()).unwrap();
        assert_eq!(mon_lower_bound(SchlafliSymbol::new(8, 3).unwrap(), 6), 48);
        assert_eq!(r.table2_lower_bound_ok, Some(true));
        assert_eq!(r.table3_upper_bound_ok, Some(true));
        assert_eq!(r.quotient_order, Some(1));
        let r = verify_bounds(&catalog::platonic_solid("dodecahedron").unwrap()).unwrap();
        assert_eq!(mon_lower_bound(SchlafliSymbol::new(5, 3).unwrap(), 12), 60);
        assert!(r.all_pass());
    }

    #[test]
    fn gcd1_on_coprime_examples() {
        for s in [
            catalog::platonic_solid("dodecahedron").unwrap(),
            catalog::bolza(),
        ] {
            let r = verify_gcd1(&s).unwrap();
            assert_eq!(r.gcd1_hypothesis_holds, Some(true));
            assert_eq!(r.gcd1_conclusion_holds, Some(true));
        }
        let r = verify_gcd1(&catalog::platonic_solid("octahedron").unwrap()).unwrap();
        assert_eq!(r.gcd1_hypothesis_holds, Some(true));
        assert!(r.gcd1_conclusion_holds.is_some());
    }

    #[test]
    fn cube_full_report() {
        let r = full_report(&catalog::platonic_solid("cube").unwrap()).unwrap();
        assert!(r.all_pass(), "{r}");
        assert_eq!(r.k, Some(4));
        assert_eq!(r.mon_order, Some(24));
        assert_eq!(r.quotient_order, Some(1));
    }

    #[test]
    fn non_rotary_report_is_gated() {
        let t = TiledSurface::from_tuples(4, &[vec![(0, 1), (0, 0), (0, 3), (0, 2)]]).unwrap();
        let r = full_report(&t).unwrap();
        assert!(!r.rotary);
        assert_eq!(r.k, None);
        assert_eq!(r.n_normal, None);
        assert_eq!(r.gcd1_conclusion_holds, None);
        assert!(!r.all_pass());
    }

    #[test]
    fn hexagonal_torus_bounds() {
        // {6,3} with three hexagons: the smallest rotary hexagonal torus beyond Π_6
        let t = catalog::torus_map(6, 1, 1).unwrap();
        let r = verify_bounds(&t).unwrap();
        assert_eq!(r.k_prime, Some(1));
        assert_eq!(quotient_upper_bound(SchlafliSymbol::new(6, 3).unwrap()), 6);
        assert!(r.quotient_order.unwrap() <= 6);
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn report_json_uses_snake_case_names() {
        let r = full_report(&catalog::platonic_solid("tetrahedron").unwrap()).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        for key in [
            "\"k_prime_divides_k\"",
            "\"n_is_subgroup\"",
            "\"quotient_order\"",
            "\"mon_order\"",
        ] {
            assert!(json.contains(key), "{key} missing from {json}");
        }
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}
