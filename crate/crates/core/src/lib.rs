//! Symbolic and numeric verification of twisted Jacobi, twisted contact and
//! homogeneous twisted Poisson structures on coordinate charts.

pub mod apath;
pub mod chart;
pub mod contact;
pub mod error;
pub mod expr;
pub mod groupoid;
pub mod jacobi;
pub mod linsolve;
pub mod numeric;
pub mod report;
pub mod tensor;

pub use chart::{Chart, ChartRef};
pub use error::{GeomError, Result};
pub use expr::{Expr, SampleConfig, Verdict, ZeroTest, Q};
pub use report::{CheckItem, ItemVerdict, Overall, Report};
