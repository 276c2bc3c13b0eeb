pub mod linalg;
pub mod abelian;
pub mod cone;
pub mod divisors;
pub mod roots;
pub mod luna;
pub mod strata;
