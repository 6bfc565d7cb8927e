//! Small named arrangements used throughout the tests and the CLI docs.

use crate::arrangement::{parse_arrangement, Arrangement};

/// Two verticals `H2: x = -1`, `H3: x = 1` and two slanted lines
/// `H1: x - 2y + 1 = 0`, `H4: x + 2y - 3 = 0` meeting at `(1, 1)` on `H3`.
pub const X4: &str = "1 -2 1\n1 0 1\n1 0 -1\n1 2 -3\n";

/// Two parallel pairs `y = x + 3`, `y = x + 1`, `y = 1 - x`, `y = 3 - x`.
pub const B4: &str = "1 -1 3\n1 -1 1\n1 1 -1\n1 1 -3\n";

/// `x = 0`, `y = 0`, `x + y = 1`.
pub const TRIANGLE: &str = "1 0 0\n0 1 0\n1 1 -1\n";

/// The coordinate axes.
pub const CROSSING: &str = "1 0 0\n0 1 0\n";

pub fn x4() -> Arrangement {
    parse_arrangement("X4", X4).expect("fixture parses")
}

pub fn b4() -> Arrangement {
    parse_arrangement("B4", B4).expect("fixture parses")
}

pub fn triangle() -> Arrangement {
    parse_arrangement("triangle", TRIANGLE).expect("fixture parses")
}

pub fn crossing() -> Arrangement {
    parse_arrangement("crossing", CROSSING).expect("fixture parses")
}
