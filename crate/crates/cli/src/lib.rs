//! Scenario runner for twistgeom: JSON scenarios of charts, structures and
//! checks, and derivations rendered back into the same format.

pub mod checks;
pub mod derive;
pub mod runner;
pub mod scenario;
pub mod world;
