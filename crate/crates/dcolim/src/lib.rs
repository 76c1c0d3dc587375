//! Derived colimits and limits of diagrams of finitely generated abelian
//! groups over finite categories, Mayer-Vietoris assembly and verification,
//! and local-covering checks.

pub mod abelian;
pub mod corpus;
pub mod dmod;
pub mod fincat;
pub mod io;
pub mod mv;
