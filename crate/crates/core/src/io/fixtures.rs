//! Built-in example subschemes used by `selftest` and the tests.

use crate::graded::{HomogeneousIdeal, IdealPieces};
use crate::weight::OnePS;

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub num_vars: usize,
    pub generators: &'static [&'static str],
    pub lambdas: &'static [&'static [i64]],
}

impl Fixture {
    pub fn ideal(&self) -> HomogeneousIdeal {
        HomogeneousIdeal::parse(self.num_vars, self.generators).expect("built-in fixture parses")
    }

    pub fn pieces(&self) -> IdealPieces {
        IdealPieces::new(self.ideal())
    }

    pub fn lambdas(&self) -> Vec<OnePS> {
        self.lambdas.iter().map(|l| OnePS::new(l.to_vec(), false).expect("special linear")).collect()
    }

    /// The fixture as an input file.
    pub fn input_json(&self) -> String {
        serde_json::json!({
            "num_vars": self.num_vars,
            "generators": self.generators,
            "lambdas": self.lambdas,
        })
        .to_string()
    }
}

pub const CONIC: Fixture = Fixture {
    name: "conic",
    num_vars: 3,
    generators: &["z0*z2 - z1^2"],
    lambdas: &[&[1, 1, -2], &[-1, -1, 2], &[1, 0, -1], &[2, -1, -1]],
};

pub const TWISTED_CUBIC: Fixture = Fixture {
    name: "twisted_cubic",
    num_vars: 4,
    generators: &["z0*z2 - z1^2", "z0*z3 - z1*z2", "z1*z3 - z2^2"],
    lambdas: &[&[3, 1, -1, -3], &[1, 0, 0, -1], &[1, 1, -1, -1], &[2, -1, 0, -1]],
};

pub const QUADRIC_SURFACE: Fixture = Fixture {
    name: "quadric_surface",
    num_vars: 4,
    generators: &["z0*z3 - z1*z2"],
    lambdas: &[&[1, 0, 0, -1], &[3, -1, -1, -1], &[1, 0, -1, 0], &[1, 1, 0, -2]],
};

pub const POINT: Fixture = Fixture {
    name: "point",
    num_vars: 3,
    generators: &["z1", "z2"],
    lambdas: &[&[2, -1, -1], &[-2, 1, 1]],
};

pub const TWO_POINTS: Fixture =
    Fixture { name: "two_points", num_vars: 2, generators: &["z0*z1"], lambdas: &[&[1, -1]] };

pub const FAT_POINT: Fixture = Fixture {
    name: "fat_point",
    num_vars: 3,
    generators: &["z0^2", "z0*z1", "z1^2"],
    lambdas: &[&[1, 0, -1], &[1, 1, -2]],
};

pub fn all() -> [Fixture; 6] {
    [CONIC, TWISTED_CUBIC, QUADRIC_SURFACE, POINT, TWO_POINTS, FAT_POINT]
}

pub fn by_name(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}
