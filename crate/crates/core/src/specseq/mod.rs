//! The spectral sequence of the filtration by partial resolutions of a
//! chosen set of crossings.

mod constants;
mod pages;
mod ses;
mod skein;

pub use constants::{shift_identities, ss_constants, SSConstants};
pub use pages::{
    compute_pages, e1_page, FilteredComplex, PageEntry, PartialHomology, SSPage, SSReport, SpectralSequence,
};
pub use ses::{verify_ses, verify_ses_with};
pub use skein::{skein_les_check, skein_les_check_with};
