//! Numerical library for positive super-solutions of the p-Laplace equation
//! with Hardy potential in exterior domains.
//!
//! The crate classifies existence/nonexistence of positive (super)solutions to
//!
//! ```text
//! -Δ_p u - μ/|x|^p u^{p-1} = C/|x|^σ u^q     in  {|x| > ρ} ⊂ R^N
//! ```
//!
//! and provides the machinery the classification rests on:
//!
//! * [`numerics`] — bracketed root finding, adaptive Runge-Kutta, adaptive
//!   quadrature and second-order dual numbers;
//! * [`specfun`] — the generalized sine function `S_p`, its half period `π_p`
//!   and the diagonal angle `(π/4)_p`;
//! * [`exponents`] — Hardy constants, the exponent roots `γ±`, `β±`, the
//!   critical line `Λ*(q)` and the existence/nonexistence verdict;
//! * [`barriers`] — explicit radial barrier profiles `r^γ (log r)^β (log log r)^τ`,
//!   residual evaluation and sub/super-solution classification;
//! * [`prufer`] — the phase-plane (Prüfer) transformation of the radial
//!   equation, large sub-solutions and their growth asymptotics;
//! * [`hardy`] — discrete verification of the (improved) Hardy inequality,
//!   Rayleigh quotients, Picone's identity and nonexistence certificates;
//! * [`cli`] — reproducible experiment runs behind the command line front-end.

pub mod acceptance;
pub mod barriers;
pub mod cli;
pub mod exponents;
pub mod hardy;
pub mod numerics;
pub mod prufer;
pub mod specfun;
