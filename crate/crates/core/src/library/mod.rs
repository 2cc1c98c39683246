//! Built-in arrangements, random generators and two standalone checkers.

mod builtins;
mod height;
mod incidence;
mod random;

pub use builtins::{builtin, dual_hesse_conic, generic_lines, tangent_quad, triangle, BUILTIN_NAMES};
pub use height::{height_check, HeightInput, HeightReport};
pub use incidence::{de_bruijn_erdos, DeBruijnErdos, EqualityCase, IncidenceStructure};
pub use random::{random_line_arrangement, random_spec, RandomSpecConfig};
