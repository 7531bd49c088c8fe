//! Group definitions shipped with the crate.

use crate::error::Result;
use crate::group::ReflectionGroup;
use crate::io::parse_group_str;

pub const Z2: &str = include_str!("../groups/z2.json");
pub const Z3: &str = include_str!("../groups/z3.json");
pub const Z4: &str = include_str!("../groups/z4.json");
pub const S3: &str = include_str!("../groups/s3.json");
pub const B2: &str = include_str!("../groups/b2.json");
pub const G312: &str = include_str!("../groups/g312.json");

pub const NAMES: [&str; 6] = ["z2", "z3", "z4", "s3", "b2", "g312"];

pub fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "z2" => Z2,
        "z3" => Z3,
        "z4" => Z4,
        "s3" => S3,
        "b2" => B2,
        "g312" => G312,
        _ => return None,
    })
}

/// Loads a bundled group by name, e.g. `"g312"`.
pub fn load(name: &str) -> Option<Result<ReflectionGroup>> {
    source(name).map(parse_group_str)
}
