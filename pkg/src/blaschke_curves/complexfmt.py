"""Text form of complex numbers: ``"0.4+0.7i"``, ``"-0.9i"``, ``"0.6"``."""

import math

__all__ = ['parse_complex', 'parse_complex_list', 'format_complex']


def parse_complex(text):
    """Parse ``a+bi`` style text; either part may be omitted."""
    s = text.strip().replace(' ', '')
    if not s:
        raise ValueError('empty complex literal')
    s = s.replace('I', 'i').replace('i', 'j')
    try:
        return complex(s)
    except ValueError:
        raise ValueError(f'cannot parse complex literal {text!r}') from None


def parse_complex_list(text):
    """Parse a comma separated list; the empty string gives ``[]``."""
    if not text.strip():
        return []
    return [parse_complex(part) for part in text.split(',')]


def _fmt(x, digits):
    if x == 0:
        return '0'
    return f'{x:.{digits}g}'


def format_complex(c, digits=12):
    """Format ``c`` as ``a+bi``, dropping a part that is exactly zero."""
    c = complex(c)
    re, im = c.real, c.imag
    if math.isnan(re) or math.isnan(im):
        return 'nan'
    if im == 0:
        return _fmt(re, digits)
    imag = _fmt(abs(im), digits)
    imag = 'i' if imag == '1' else imag + 'i'
    if re == 0:
        return ('-' if im < 0 else '') + imag
    return _fmt(re, digits) + ('-' if im < 0 else '+') + imag
