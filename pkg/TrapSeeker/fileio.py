import json
import sys
from fractions import Fraction
from html import escape
from os import path

from TrapSeeker.exact_geom import Point, poly_to_json, rat_str
from TrapSeeker.utility import UsageError


def rat_record(r):
    """
    Returns {"exact": "num/den", "approx": float} for a rational
    Only the exact field is authoritative
    """

    r = Fraction(r)
    return {"exact": rat_str(r), "approx": float(r)}


def to_jsonable(obj):
    """
    Returns `obj` with Fractions as "num/den" strings, Points as pairs and
    polygons in the polygon JSON format
    """

    if isinstance(obj, Fraction):
        return rat_str(obj)
    if isinstance(obj, Point):
        return [rat_str(obj.x), rat_str(obj.y)]
    if hasattr(obj, 'vertices'):
        return poly_to_json(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [to_jsonable(v) for v in obj]
    return obj


def write_json_lines(records, stream=None):
    """
    Writes one JSON object per line to `stream` (default stdout)
    Keys are sorted so identical records give identical bytes
    """

    stream = sys.stdout if stream is None else stream
    for record in records:
        stream.write(json.dumps(to_jsonable(record), sort_keys=True) + '\n')
    stream.flush()


def read_campaign_config(filepath):
    """
    Returns dict of `key=value` settings from a campaign config file
    Blank lines and text after '#' are ignored
    """

    if not path.isfile(filepath):
        raise UsageError(f"no campaign config at {filepath}")
    settings = {}
    with open(filepath) as f:
        for number, line in enumerate(f, start=1):
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition('=')
            if not sep or not key.strip():
                raise UsageError(f"{filepath}:{number}: expected key=value, got {line!r}")
            settings[key.strip()] = value.strip()
    return settings


PREAMBLE = """\
<?xml version="1.0" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN"
"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">

<svg
    width="%(size)d"
    height="%(size)d"
    viewBox="0 0 %(size)d %(size)d"
    version="1.1"
    xmlns="http://www.w3.org/2000/svg">
<rect x="0" y="0" width="%(size)d" height="%(size)d" style="fill:#ffffff;stroke:#000000;stroke-width:2"/>
"""

POSTAMBLE = """\
</svg>
"""


class SVG:
    """
    Unit square figure on a 1000 x 1000 viewport, y axis pointing up
    """

    size = 1000

    def __init__(self):
        self.commands = []

    def _xy(self, p):
        x, y = p
        return float(x) * self.size, (1 - float(y)) * self.size

    def polygon(self, points, stroke='#000000', fill='none', width=2.0):
        coords = ' '.join('%f,%f' % self._xy(p) for p in points)
        self.commands.append(
            '<polygon points="%s" style="fill:%s;fill-opacity:0.3;stroke:%s;stroke-width:%f"/>' % (
                coords, fill, stroke, width)
        )

    def rect(self, box, stroke='none', fill='#1f77b4'):
        x0, y1 = self._xy((box.x_lo, box.y_lo))
        x1, y0 = self._xy((box.x_hi, box.y_hi))
        self.commands.append(
            '<rect x="%f" y="%f" width="%f" height="%f" style="fill:%s;stroke:%s"/>' % (
                x0, y0, x1 - x0, y1 - y0, fill, stroke)
        )

    def circle(self, p, radius=4.0, fill='#d62728'):
        x, y = self._xy(p)
        self.commands.append(
            '<circle cx="%(x)f" cy="%(y)f" r="%(radius)f" style="fill:%(fill)s"/>' % locals()
        )

    def text(self, p, text, color='#666666'):
        x, y = self._xy(p)
        text = escape(str(text))
        self.commands.append(
            '<text x="%(x)f" y="%(y)f" fill="%(color)s" font-size="20" font-family="monospace">%(text)s</text>' % locals()
        )

    def render(self):
        size = self.size
        return PREAMBLE % locals() + ''.join(c + '\n' for c in self.commands) + POSTAMBLE

    def save(self, filename):
        with open(filename, 'w') as f:
            f.write(self.render())


def hole_svg(hole, points=()):
    """
    Returns SVG of the parts of `hole` with optional marked points
    """

    svg = SVG()
    svg.text((Fraction(1, 50), Fraction(24, 25)), hole.name)
    for part in hole.parts:
        svg.polygon(part.vertices, stroke='#000000', fill='#1f77b4')
    for p in points:
        svg.circle(p)
    return svg


def family_svg(family, anchors=()):
    """
    Returns SVG overlay of a polygon family with its anchor points
    """

    svg = SVG()
    for poly in family.polygons:
        svg.polygon(poly.vertices, stroke='#2ca02c', fill='none')
    for p in anchors:
        svg.circle(p, fill='#000000')
    return svg
