//! Mathieu groups from embedded generator assets.

use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup};

const M11: &str = include_str!("../../assets/mathieu/m11.txt");
const M12: &str = include_str!("../../assets/mathieu/m12.txt");
const M23: &str = include_str!("../../assets/mathieu/m23.txt");
const M24: &str = include_str!("../../assets/mathieu/m24.txt");

/// Parses an asset: comment lines, `version`, `degree n`, then one permutation per line
/// as the 1-based images of `1..n`.
pub fn parse_asset(text: &str) -> Result<PermGroup> {
    let mut degree = None;
    let mut gens = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        if let Some(v) = line.strip_prefix("version") {
            if v.trim() != "1" {
                return Err(Error::Param(format!("unsupported asset version {}", v.trim())));
            }
        } else if let Some(d) = line.strip_prefix("degree") {
            degree = Some(d.trim().parse::<usize>().map_err(|e| Error::Param(e.to_string()))?);
        } else {
            let n = degree.ok_or_else(|| Error::Param("degree line missing".into()))?;
            let imgs: std::result::Result<Vec<u32>, _> = line.split_whitespace().map(|t| t.parse::<u32>()).collect();
            let imgs: Vec<u32> = imgs.map_err(|e| Error::Param(e.to_string()))?.into_iter().map(|x| x.wrapping_sub(1)).collect();
            if imgs.len() != n {
                return Err(Error::Param(format!("expected {n} images, got {}", imgs.len())));
            }
            gens.push(Perm::from_images(imgs).ok_or_else(|| Error::Param("not a permutation".into()))?);
        }
    }
    let n = degree.ok_or_else(|| Error::Param("degree line missing".into()))?;
    Ok(PermGroup::new(n, gens))
}

pub const ORDERS: [(&str, u128); 7] = [
    ("M11", 7920),
    ("M12", 95040),
    ("M22", 443520),
    ("M22.2", 887040),
    ("M23", 10200960),
    ("M24", 244823040),
    ("M12.2", 190080),
];

fn checked(name: &str, g: PermGroup) -> Result<PermGroup> {
    let want = ORDERS.iter().find(|(n, _)| *n == name).unwrap().1;
    if g.order() != want {
        return Err(Error::Internal(format!("{name} generators give order {}", g.order())));
    }
    Ok(g)
}

/// The two points fixed to obtain M22 from M24.
const M22_POINTS: [u32; 2] = [22, 23];

fn m22_pair(with_swap: bool) -> Result<PermGroup> {
    let m24 = mathieu("M24")?;
    let stab = m24.pointwise_stabilizer(&M22_POINTS);
    let mut gens = stab.gens().to_vec();
    if with_swap {
        let swap = m24
            .bsgs()
            .map_tuple(&M22_POINTS, &[M22_POINTS[1], M22_POINTS[0]])
            .ok_or_else(|| Error::Internal("no element swapping the pair".into()))?;
        gens.push(swap);
    }
    let pts: Vec<u32> = (0..22).collect();
    PermGroup::new(24, gens).restrict(&pts).ok_or_else(|| Error::Internal("restriction failed".into()))
}

/// `M11, M12, M22, M22.2, M23, M24` in their natural representations, orders checked.
pub fn mathieu(name: &str) -> Result<PermGroup> {
    let g = match name {
        "M11" => parse_asset(M11)?,
        "M12" => parse_asset(M12)?,
        "M23" => parse_asset(M23)?,
        "M24" => parse_asset(M24)?,
        "M22" => m22_pair(false)?,
        "M22.2" => m22_pair(true)?,
        _ => return Err(Error::Param(format!("unknown Mathieu group {name}"))),
    };
    checked(name, g)
}

/// M12.2 on 24 points: the stabilizer in M24 of a pair of complementary dodecads.
pub fn m12_2_on_24() -> Result<PermGroup> {
    let m24 = mathieu("M24")?;
    let dodecad = find_dodecad(&m24)?;
    let m12 = m24.set_stabilizer(&dodecad, 4_000_000, 0)?;
    if m12.order() != 95040 {
        return Err(Error::Internal(format!("dodecad stabilizer has order {}", m12.order())));
    }
    let comp: Vec<u32> = (0..24).filter(|x| !dodecad.contains(x)).collect();
    let key = |s: &[u32]| {
        let mut v = s.to_vec();
        v.sort_unstable();
        v
    };
    let (d, c) = (key(&dodecad), key(&comp));
    // an element exchanging the two dodecads
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(0);
    for _ in 0..100_000 {
        let g = m24.random_element(&mut rng);
        let img: Vec<u32> = d.iter().map(|&x| g.image(x)).collect();
        if key(&img) == c {
            let mut gens = m12.gens().to_vec();
            gens.push(g);
            return checked("M12.2", PermGroup::new(24, gens));
        }
    }
    Err(Error::Internal("no dodecad swap found".into()))
}

/// A 12-set whose setwise stabilizer in M24 is M12. Dodecads are the weight-12 words of
/// the Golay code, obtained here as symmetric differences of octads.
fn find_dodecad(m24: &PermGroup) -> Result<Vec<u32>> {
    let octads = octads(m24)?;
    for a in &octads {
        for b in &octads {
            let sd: Vec<u32> = (0..24).filter(|x| a.contains(x) != b.contains(x)).collect();
            if sd.len() == 12 {
                // a symmetric difference of two octads meeting in 2 points
                return Ok(sd);
            }
        }
    }
    Err(Error::Internal("no dodecad".into()))
}

/// Octads: the orbit of the octad through `0..5`, which is the complement of the
/// 16-point orbit of the pointwise stabilizer of those 5 points.
pub fn octads(m24: &PermGroup) -> Result<Vec<Vec<u32>>> {
    let five = [0u32, 1, 2, 3, 4];
    let stab = m24.pointwise_stabilizer(&five);
    let fixed: Vec<u32> = (0..24).filter(|&x| stab.orbit(x).len() < 16).collect();
    if fixed.len() != 8 {
        return Err(Error::Internal("5-point stabilizer does not fix an octad".into()));
    }
    let orb = crate::perm::orbit_transversal(m24, fixed.clone(), |s, g| {
        let mut v: Vec<u32> = s.iter().map(|&x| g.image(x)).collect();
        v.sort_unstable();
        v
    }, 1000)?;
    if orb.len() != 759 {
        return Err(Error::Internal(format!("{} octads", orb.len())));
    }
    Ok(orb.points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_transitivity() {
        for name in ["M11", "M12", "M23", "M24"] {
            let g = mathieu(name).unwrap();
            assert!(g.is_transitive(), "{name}");
        }
        let m11 = mathieu("M11").unwrap();
        assert_eq!(m11.stabilizer(0).order(), 720);
        let m22 = mathieu("M22").unwrap();
        assert_eq!(m22.degree(), 22);
        assert!(m22.is_transitive());
    }

    #[test]
    fn asset_errors() {
        assert!(parse_asset("degree 3\n1 1 2\n").is_err());
        assert!(parse_asset("version 2\ndegree 1\n1\n").is_err());
        assert!(mathieu("M13").is_err());
    }
}
