//! Acceptance checks for the `matroid-hopf` crate; see `tests/acceptance.rs`.
