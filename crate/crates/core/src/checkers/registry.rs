//! The shipped guideline set.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Category {
    Directive,
    Mandatory,
    Required,
}

impl Category {
    pub fn as_str(self) -> &'static str {
        match self {
            Category::Directive => "directive",
            Category::Mandatory => "mandatory",
            Category::Required => "required",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Guideline families. The first eight group the security guidelines; the
/// last holds the library bans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    ExternalData,
    SizeofArrayParam,
    Ctype,
    MemCompare,
    EnvFunctions,
    StringHandling,
    EofHandling,
    Errno,
    Restrictive,
}

impl Family {
    pub const SECURITY: [Family; 8] = [
        Family::ExternalData,
        Family::SizeofArrayParam,
        Family::Ctype,
        Family::MemCompare,
        Family::EnvFunctions,
        Family::StringHandling,
        Family::EofHandling,
        Family::Errno,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Family::ExternalData => "validation of external data",
            Family::SizeofArrayParam => "sizeof on array-typed parameters",
            Family::Ctype => "<ctype.h> functions",
            Family::MemCompare => "memory comparison functions",
            Family::EnvFunctions => "environment functions",
            Family::StringHandling => "<string.h> string handling",
            Family::EofHandling => "<stdio.h> I/O and EOF",
            Family::Errno => "handling of errno",
            Family::Restrictive => "restrictive library bans",
        }
    }
}

/// Which profile a guideline belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Profile {
    Security,
    Restrictive,
    Both,
}

impl Profile {
    pub fn includes(self, g: &Guideline) -> bool {
        match self {
            Profile::Security => !g.is_ban(),
            Profile::Restrictive => g.is_ban(),
            Profile::Both => true,
        }
    }
}

impl std::str::FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "security" => Ok(Profile::Security),
            "restrictive" => Ok(Profile::Restrictive),
            "both" => Ok(Profile::Both),
            other => Err(format!("unknown profile `{other}`")),
        }
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Guideline {
    pub id: &'static str,
    pub category: Category,
    pub family: Family,
    pub title: &'static str,
}

impl Guideline {
    pub fn is_ban(&self) -> bool {
        self.family == Family::Restrictive
    }
}

const fn g(id: &'static str, category: Category, family: Family, title: &'static str) -> Guideline {
    Guideline { id, category, family, title }
}

use Category::*;

pub static GUIDELINES: &[Guideline] = &[
    g("SEC.extdata.1", Directive, Family::ExternalData, "Data from untrusted sources shall be validated before use"),
    g("SEC.sizeof.1", Mandatory, Family::SizeofArrayParam, "sizeof shall not be applied to a parameter declared as an array"),
    g("SEC.ctype.1", Mandatory, Family::Ctype, "<ctype.h> arguments shall be representable as unsigned char or be EOF"),
    g("SEC.memcmp.1", Required, Family::MemCompare, "memcmp shall not compare objects of structure type"),
    g("SEC.memcmp.2", Required, Family::MemCompare, "memcmp shall not compare null-terminated strings"),
    g("SEC.memcmp.3", Required, Family::MemCompare, "Size arguments of memory functions shall not exceed the buffers"),
    g("SEC.env.1", Mandatory, Family::EnvFunctions, "Objects returned by environment functions shall not be modified"),
    g("SEC.env.2", Mandatory, Family::EnvFunctions, "Pointers from environment functions shall not be used after a later such call"),
    g("SEC.string.1", Mandatory, Family::StringHandling, "Unbounded string functions shall not be used"),
    g("SEC.string.2", Mandatory, Family::StringHandling, "Bounded string functions shall not exceed the destination"),
    g("SEC.eof.1", Required, Family::EofHandling, "EOF shall only be compared with an unmodified stdio result"),
    g("SEC.errno.1", Required, Family::Errno, "errno shall be zero before calling an errno-setting function"),
    g("SEC.errno.2", Required, Family::Errno, "errno shall be tested after calling an errno-setting function"),
    g("SEC.errno.3", Required, Family::Errno, "errno shall only be tested after an errno-setting function"),
    g("BAN.21_3", Required, Family::Restrictive, "Memory allocation functions shall not be used"),
    g("BAN.21_5", Required, Family::Restrictive, "<signal.h> facilities shall not be used"),
    g("BAN.21_6", Required, Family::Restrictive, "<stdio.h> input/output functions shall not be used"),
    g("BAN.21_8", Required, Family::Restrictive, "getenv shall not be used"),
];

pub fn guideline(id: &str) -> Option<&'static Guideline> {
    GUIDELINES.iter().find(|g| g.id == id)
}

/// Looks up a guideline the checkers themselves emit.
pub(crate) fn known(id: &str) -> &'static Guideline {
    guideline(id).unwrap_or_else(|| panic!("unregistered guideline {id}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn security_set_has_one_directive_six_mandatory_seven_required() {
        let sec: Vec<_> = GUIDELINES.iter().filter(|g| !g.is_ban()).collect();
        assert_eq!(sec.len(), 14);
        let count = |c| sec.iter().filter(|g| g.category == c).count();
        assert_eq!((count(Directive), count(Mandatory), count(Required)), (1, 6, 7));
        assert_eq!(GUIDELINES.iter().filter(|g| g.is_ban()).count(), 4);
    }

    #[test]
    fn family_sizes_follow_the_markers() {
        let size = |f| GUIDELINES.iter().filter(|g| g.family == f).count();
        let sizes: Vec<_> = Family::SECURITY.iter().map(|&f| size(f)).collect();
        assert_eq!(sizes, [1, 1, 1, 3, 2, 2, 1, 3]);
    }

    #[test]
    fn ids_are_unique_and_prefixed() {
        let mut ids: Vec<_> = GUIDELINES.iter().map(|g| g.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), GUIDELINES.len());
        for g in GUIDELINES {
            assert_eq!(g.id.starts_with("BAN."), g.is_ban());
        }
    }

    #[test]
    fn profiles_partition_the_set() {
        for g in GUIDELINES {
            assert_ne!(Profile::Security.includes(g), Profile::Restrictive.includes(g));
            assert!(Profile::Both.includes(g));
        }
    }
}
