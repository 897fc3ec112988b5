"""Sampled curve points and their CSV / JSON serialization.

CSV header: ``theta,j,k,re,im,at_infinity``. Pair labels ``j < k`` are
1-based branch labels. Points at infinity have empty ``re``/``im`` in CSV and
``null`` in JSON.
"""

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

__all__ = ['SampleRecord', 'CurveSamples', 'CSV_HEADER']

CSV_HEADER = ('theta', 'j', 'k', 're', 'im', 'at_infinity')


def _num(x):
    return repr(float(x))


@dataclass(frozen=True)
class SampleRecord:
    theta: float
    pair: tuple
    point: complex = None
    at_infinity: bool = False

    def to_dict(self):
        finite = self.point is not None
        return {
            'theta': float(self.theta),
            'j': int(self.pair[0]),
            'k': int(self.pair[1]),
            're': float(self.point.real) if finite else None,
            'im': float(self.point.imag) if finite else None,
            'at_infinity': bool(self.at_infinity),
        }


@dataclass
class CurveSamples:
    """Point cloud for the exterior or interior curve.

    ``n_dropped`` counts parameter values skipped as singular,
    ``n_degenerate`` counts retained samples whose point is stationary in
    ``theta``, and ``monodromy`` is the branch permutation after a full loop
    (``None`` unless the grid covers one).
    """

    kind: str
    records: list = field(default_factory=list)
    n_dropped: int = 0
    n_degenerate: int = 0
    monodromy: tuple = None

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def finite_points(self):
        return np.array([r.point for r in self.records if not r.at_infinity],
                        dtype=complex)

    def by_key(self):
        """``{(theta, pair): record}`` for joining sample sets."""
        return {(r.theta, r.pair): r for r in self.records}

    def footer(self):
        return {
            'curve_kind': self.kind,
            'n_records': len(self.records),
            'n_dropped': self.n_dropped,
            'n_degenerate': self.n_degenerate,
            'monodromy': list(self.monodromy) if self.monodromy is not None else None,
        }

    def to_records(self):
        return [r.to_dict() for r in self.records]

    def to_json(self, with_footer=False):
        if with_footer:
            doc = {'records': self.to_records(), 'footer': self.footer()}
        else:
            doc = self.to_records()
        return json.dumps(doc, indent=1)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator='\n')
        w.writerow(CSV_HEADER)
        for r in self.records:
            finite = not r.at_infinity
            w.writerow([
                _num(r.theta), r.pair[0], r.pair[1],
                _num(r.point.real) if finite else '',
                _num(r.point.imag) if finite else '',
                int(r.at_infinity),
            ])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text, kind):
        rows = csv.DictReader(io.StringIO(text))
        if tuple(rows.fieldnames or ()) != CSV_HEADER:
            raise ValueError(f'unexpected CSV header {rows.fieldnames}')
        out = cls(kind)
        for row in rows:
            inf = row['at_infinity'] in ('1', 'true', 'True')
            point = None if inf else complex(float(row['re']), float(row['im']))
            out.records.append(SampleRecord(
                float(row['theta']), (int(row['j']), int(row['k'])), point, inf))
        return out
