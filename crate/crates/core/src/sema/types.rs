use std::fmt;

/// Size of `int` and of every pointer. The checker assumes an LP64 target.
pub const INT_SIZE: u64 = 4;
pub const POINTER_SIZE: u64 = 8;

/// Simplified C type classification.
///
/// Integer and floating categories carry their byte size when known. Struct
/// sizes are never computed since padding is implementation-defined.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TypeDesc {
    Void,
    PlainChar,
    SignedChar,
    UnsignedChar,
    SignedInt(Option<u64>),
    UnsignedInt(Option<u64>),
    Floating(Option<u64>),
    Pointer(Box<TypeDesc>),
    Array(Box<TypeDesc>, Option<u64>),
    Struct(String),
    /// A function designator; the payload is the return type.
    Function(Box<TypeDesc>),
}

impl TypeDesc {
    pub fn int() -> Self {
        TypeDesc::SignedInt(Some(INT_SIZE))
    }

    pub fn size_t() -> Self {
        TypeDesc::UnsignedInt(Some(8))
    }

    pub fn pointer_to(inner: TypeDesc) -> Self {
        TypeDesc::Pointer(Box::new(inner))
    }

    pub fn byte_size(&self) -> Option<u64> {
        match self {
            TypeDesc::Void | TypeDesc::Struct(_) | TypeDesc::Function(_) => None,
            TypeDesc::PlainChar | TypeDesc::SignedChar | TypeDesc::UnsignedChar => Some(1),
            TypeDesc::SignedInt(s) | TypeDesc::UnsignedInt(s) | TypeDesc::Floating(s) => *s,
            TypeDesc::Pointer(_) => Some(POINTER_SIZE),
            TypeDesc::Array(elem, extent) => Some(extent.as_ref()?.checked_mul(elem.byte_size()?)?),
        }
    }

    pub fn is_char(&self) -> bool {
        matches!(self, TypeDesc::PlainChar | TypeDesc::SignedChar | TypeDesc::UnsignedChar)
    }

    pub fn is_integer(&self) -> bool {
        self.is_char() || matches!(self, TypeDesc::SignedInt(_) | TypeDesc::UnsignedInt(_))
    }

    pub fn is_arithmetic(&self) -> bool {
        self.is_integer() || matches!(self, TypeDesc::Floating(_))
    }

    pub fn is_pointer_like(&self) -> bool {
        matches!(self, TypeDesc::Pointer(_) | TypeDesc::Array(..))
    }

    /// Pointee of a pointer, element of an array.
    pub fn target(&self) -> Option<&TypeDesc> {
        match self {
            TypeDesc::Pointer(t) | TypeDesc::Array(t, _) => Some(t),
            _ => None,
        }
    }

    /// Array-to-pointer and function-to-pointer decay.
    pub fn decayed(&self) -> TypeDesc {
        match self {
            TypeDesc::Array(elem, _) => TypeDesc::Pointer(elem.clone()),
            TypeDesc::Function(_) => TypeDesc::Pointer(Box::new(self.clone())),
            other => other.clone(),
        }
    }

    /// Integer promotion, except that character categories are preserved.
    pub fn promoted_keep_char(&self) -> TypeDesc {
        match self {
            TypeDesc::SignedInt(Some(s)) | TypeDesc::UnsignedInt(Some(s)) if *s < INT_SIZE => TypeDesc::int(),
            other => other.decayed(),
        }
    }

    /// Full integer promotion: characters and short integers become `int`.
    pub fn promoted(&self) -> TypeDesc {
        if self.is_char() {
            TypeDesc::int()
        } else {
            self.promoted_keep_char()
        }
    }
}

/// Usual arithmetic conversions over already-promoted operands.
pub fn usual_arithmetic(a: &TypeDesc, b: &TypeDesc) -> TypeDesc {
    let (a, b) = (a.promoted(), b.promoted());
    match (&a, &b) {
        (TypeDesc::Floating(x), TypeDesc::Floating(y)) => TypeDesc::Floating((*x).max(*y)),
        (TypeDesc::Floating(_), _) => a,
        (_, TypeDesc::Floating(_)) => b,
        _ => {
            let size = a.byte_size().max(b.byte_size());
            let unsigned = |t: &TypeDesc| matches!(t, TypeDesc::UnsignedInt(_));
            let wider_unsigned = (unsigned(&a) && a.byte_size() >= b.byte_size())
                || (unsigned(&b) && b.byte_size() >= a.byte_size());
            if wider_unsigned {
                TypeDesc::UnsignedInt(size)
            } else {
                TypeDesc::SignedInt(size)
            }
        }
    }
}

impl fmt::Display for TypeDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeDesc::Void => f.write_str("void"),
            TypeDesc::PlainChar => f.write_str("char"),
            TypeDesc::SignedChar => f.write_str("signed char"),
            TypeDesc::UnsignedChar => f.write_str("unsigned char"),
            TypeDesc::SignedInt(s) => write!(f, "signed int({})", s.map_or("?".into(), |s| s.to_string())),
            TypeDesc::UnsignedInt(s) => write!(f, "unsigned int({})", s.map_or("?".into(), |s| s.to_string())),
            TypeDesc::Floating(s) => write!(f, "floating({})", s.map_or("?".into(), |s| s.to_string())),
            TypeDesc::Pointer(t) => write!(f, "{t} *"),
            TypeDesc::Array(t, Some(n)) => write!(f, "{t} [{n}]"),
            TypeDesc::Array(t, None) => write!(f, "{t} []"),
            TypeDesc::Struct(tag) => write!(f, "struct {tag}"),
            TypeDesc::Function(r) => write!(f, "{r} ()"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn array_size_is_extent_times_element() {
        let t = TypeDesc::Array(Box::new(TypeDesc::int()), Some(10));
        assert_eq!(t.byte_size(), Some(40));
        assert_eq!(TypeDesc::Array(Box::new(TypeDesc::PlainChar), None).byte_size(), None);
        assert_eq!(TypeDesc::Array(Box::new(TypeDesc::Struct("S".into())), Some(2)).byte_size(), None);
    }

    #[test]
    fn promotion_keeps_char_on_request() {
        assert_eq!(TypeDesc::PlainChar.promoted_keep_char(), TypeDesc::PlainChar);
        assert_eq!(TypeDesc::PlainChar.promoted(), TypeDesc::int());
        assert_eq!(TypeDesc::SignedInt(Some(2)).promoted_keep_char(), TypeDesc::int());
    }

    #[test]
    fn arithmetic_conversions() {
        assert_eq!(usual_arithmetic(&TypeDesc::PlainChar, &TypeDesc::int()), TypeDesc::int());
        assert_eq!(usual_arithmetic(&TypeDesc::int(), &TypeDesc::size_t()), TypeDesc::size_t());
        assert_eq!(usual_arithmetic(&TypeDesc::int(), &TypeDesc::Floating(Some(8))), TypeDesc::Floating(Some(8)));
    }
}
