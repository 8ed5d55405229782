//! The printed weight-12 and weight-10 examples as literal data, and a
//! pass/fail suite comparing them with freshly built matrices.

use serde::Serialize;

use crate::error::Result;
use crate::linalg::rational::{self, Rational};
use crate::linalg::RatMatrix;
use crate::matrices::{build_c_with, build_d_with, depth1_coeff, CoeffFn, Level};
use crate::period::{atkin_lehner_sign, from_vector, in_w_space, RestrictedVector, Sign};
use crate::spectral::hecke_charpoly;

pub const C2_K12: [[&str; 4]; 4] = [
    ["6885/256", "5355/128", "-5355/128", "-26775/1024"],
    ["945/64", "441/32", "-13167/1024", "-945/64"],
    ["45/8", "1905/1024", "-15/16", "-45/8"],
    ["1533/1024", "0", "0", "-3/4"],
];

pub const C3_K12: [[&str; 4]; 4] = [
    ["3280/243", "45920/2187", "-45920/2187", "-783920/59049"],
    ["1820/243", "5096/729", "-398216/59049", "-1820/243"],
    ["80/27", "43720/59049", "-40/81", "-80/27"],
    ["39364/59049", "0", "0", "-4/9"],
];

pub const DC2_K10: [[&str; 3]; 3] = [
    ["-14", "0", "53/4"],
    ["-6", "-15/16", "6"],
    ["-127/64", "0", "1"],
];

pub const DC3_K10: [[&str; 3]; 3] = [
    ["-14", "0", "122/9"],
    ["-6", "-40/81", "6"],
    ["-1093/729", "0", "1"],
];

/// A printed left eigenvector of `C^N` or of `D C`. The sign is the
/// Atkin-Lehner sign of the attached newform, when there is one.
pub struct EigenClaim {
    pub level: Level,
    pub weight: u32,
    pub vector: &'static [i64],
    pub eigenvalue: &'static str,
    pub uses_dc: bool,
    pub sign: Option<Sign>,
}

pub const EIGEN_CLAIMS: [EigenClaim; 5] = [
    EigenClaim {
        level: Level::Two,
        weight: 12,
        vector: &[1, -3, 3, -1],
        eigenvalue: "-2073/1024",
        uses_dc: false,
        sign: None,
    },
    EigenClaim {
        level: Level::Three,
        weight: 12,
        vector: &[1, -3, 3, -1],
        eigenvalue: "-44224/59049",
        uses_dc: false,
        sign: None,
    },
    EigenClaim {
        level: Level::Two,
        weight: 10,
        vector: &[2, -7, 8],
        eigenvalue: "-15/16",
        uses_dc: true,
        sign: Some(Sign::Minus),
    },
    EigenClaim {
        level: Level::Three,
        weight: 10,
        vector: &[2, -9, 18],
        eigenvalue: "-40/81",
        uses_dc: true,
        sign: Some(Sign::Minus),
    },
    EigenClaim {
        level: Level::Three,
        weight: 10,
        vector: &[1, 0, -9],
        eigenvalue: "-41/81",
        uses_dc: true,
        sign: Some(Sign::Plus),
    },
];

/// Outcome of one golden check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenCheck {
    pub id: String,
    pub group: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Group names accepted by `run_golden`'s filter, besides exact check ids.
pub const GROUPS: [&str; 6] = [
    "matrices",
    "k12-level2",
    "k12-level3",
    "k10-level2",
    "k10-level3",
    "signs",
];

fn literal<const R: usize, const C: usize>(rows: &[[&str; C]; R]) -> RatMatrix {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|s| rational::parse(s).expect("literal")).collect())
        .collect();
    RatMatrix::from_rows(rows, C).expect("literal shape")
}

/// How a built matrix departs from the printed one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mismatch {
    Shape { expected: (usize, usize), found: (usize, usize) },
    /// 1-based position of the first differing entry.
    Entry { row: usize, col: usize, expected: Rational, found: Rational },
}

pub fn first_mismatch(expected: &RatMatrix, found: &RatMatrix) -> Option<Mismatch> {
    let shape = |m: &RatMatrix| (m.rows(), m.cols());
    if shape(expected) != shape(found) {
        return Some(Mismatch::Shape {
            expected: shape(expected),
            found: shape(found),
        });
    }
    for i in 0..expected.rows() {
        for j in 0..expected.cols() {
            if expected.get(i, j) != found.get(i, j) {
                return Some(Mismatch::Entry {
                    row: i + 1,
                    col: j + 1,
                    expected: expected.get(i, j).clone(),
                    found: found.get(i, j).clone(),
                });
            }
        }
    }
    None
}

fn matrix_check(id: &str, name: &str, expected: RatMatrix, found: RatMatrix) -> GoldenCheck {
    let (passed, detail) = match first_mismatch(&expected, &found) {
        None => (true, format!("{name} matches entry for entry")),
        Some(Mismatch::Shape { expected: (er, ec), found: (fr, fc) }) => {
            (false, format!("{name} has shape {fr}x{fc}, expected {er}x{ec}"))
        }
        Some(Mismatch::Entry { row, col, expected, found }) => (
            false,
            format!("first mismatch at {name}({row},{col}): expected {expected}, found {found}"),
        ),
    };
    GoldenCheck {
        id: id.to_string(),
        group: "matrices",
        passed,
        detail,
    }
}

fn dc_with(coeff: CoeffFn<'_>, level: Level, k: u32) -> Result<RatMatrix> {
    build_d_with(coeff, level, k)?.mul(&build_c_with(coeff, level, k)?)
}

fn claim_group(c: &EigenClaim) -> &'static str {
    match (c.weight, c.level) {
        (12, Level::Two) => "k12-level2",
        (12, _) => "k12-level3",
        (_, Level::Two) => "k10-level2",
        _ => "k10-level3",
    }
}

fn sign_suffix(sign: Option<Sign>) -> &'static str {
    match sign {
        Some(Sign::Plus) => "-plus",
        Some(Sign::Minus) => "-minus",
        None => "",
    }
}

fn all_checks(coeff: CoeffFn<'_>) -> Result<Vec<GoldenCheck>> {
    let mut out = vec![
        matrix_check("c2-k12", "C^2_{12,2}", literal(&C2_K12), build_c_with(coeff, Level::Two, 12)?),
        matrix_check("c3-k12", "C^3_{12,2}", literal(&C3_K12), build_c_with(coeff, Level::Three, 12)?),
        matrix_check("dc2-k10", "(D C)^2_{10,2}", literal(&DC2_K10), dc_with(coeff, Level::Two, 10)?),
        matrix_check("dc3-k10", "(D C)^3_{10,2}", literal(&DC3_K10), dc_with(coeff, Level::Three, 10)?),
    ];

    for claim in &EIGEN_CLAIMS {
        let n = claim.level.n();
        let m = if claim.uses_dc {
            dc_with(coeff, claim.level, claim.weight)?
        } else {
            build_c_with(coeff, claim.level, claim.weight)?
        };
        let v: Vec<Rational> = claim.vector.iter().map(|&x| rational::int(x)).collect();
        let mu = rational::parse(claim.eigenvalue)?;
        let image = m.left_apply(&v)?;
        let expected: Vec<Rational> = v.iter().map(|x| x * &mu).collect();
        let passed = image == expected;
        let shown = |xs: &[Rational]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        out.push(GoldenCheck {
            id: format!("eigen-k{}-level{n}{}", claim.weight, sign_suffix(claim.sign)),
            group: claim_group(claim),
            passed,
            detail: if passed {
                format!("({}) is a left eigenvector with eigenvalue {mu}", shown(&v))
            } else {
                format!("({}) maps to ({}), expected ({})", shown(&v), shown(&image), shown(&expected))
            },
        });
    }

    for (level, lambda) in [(Level::Two, -24), (Level::Three, 252)] {
        let p = hecke_charpoly(12, level)?;
        let passed = p.degree() == Some(1) && p.coeff(0) == rational::int(-lambda) && p.is_monic();
        out.push(GoldenCheck {
            id: format!("hecke-k12-level{}", level.n()),
            group: if level == Level::Two { "k12-level2" } else { "k12-level3" },
            passed,
            detail: format!("Hecke polynomial {}, expected root {lambda}", p.display_in("t")),
        });
    }

    for claim in EIGEN_CLAIMS.iter().filter(|c| c.sign.is_some()) {
        let sign = claim.sign.expect("filtered");
        let v = RestrictedVector::from_ints(claim.weight, claim.vector)?;
        let found = atkin_lehner_sign(&from_vector(&v), claim.level, claim.weight)?;
        let in_w = in_w_space(&v, claim.level, sign)?;
        let passed = found == Some(sign) && in_w;
        let found_str = found.map_or("none".to_string(), |s| s.to_string());
        out.push(GoldenCheck {
            id: format!("sign-k{}-level{}{}", claim.weight, claim.level.n(), sign_suffix(claim.sign)),
            group: "signs",
            passed,
            detail: format!("Atkin-Lehner sign {found_str} (expected {sign}), in W-space: {in_w}"),
        });
    }
    Ok(out)
}

/// Runs the suite against a depth-one coefficient source, keeping the checks
/// whose id or group equals `only` when given.
pub fn run_golden_with(coeff: CoeffFn<'_>, only: Option<&str>) -> Result<Vec<GoldenCheck>> {
    let checks = all_checks(coeff)?;
    Ok(match only {
        None => checks,
        Some(sel) => checks
            .into_iter()
            .filter(|c| c.id == sel || c.group == sel)
            .collect(),
    })
}

pub fn run_golden(only: Option<&str>) -> Result<Vec<GoldenCheck>> {
    run_golden_with(&depth1_coeff, only)
}

/// `depth1_coeff` with its sign flipped, for exercising the failure path.
pub fn sign_flipped_coeff(level: Level, p: u32) -> Result<Rational> {
    depth1_coeff(level, p).map(|c| -c)
}

/// Every id the suite can produce.
pub fn check_ids() -> Vec<String> {
    all_checks(&depth1_coeff)
        .expect("clean build")
        .into_iter()
        .map(|c| c.id)
        .collect()
}
