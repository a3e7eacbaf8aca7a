import io
import json
from fractions import Fraction as F

import pytest

from TrapSeeker import fileio
from TrapSeeker.exact_geom import Box, ConvexPoly, point
from TrapSeeker.holes import named_hole
from TrapSeeker.trap_search import Family
from TrapSeeker.utility import UsageError


def test_rat_record():
    assert fileio.rat_record(F(1, 12)) == {'exact': '1/12', 'approx': 1 / 12}
    assert fileio.rat_record(2) == {'exact': '2/1', 'approx': 2.0}


def test_write_json_lines_is_deterministic():
    tri = ConvexPoly((point(0, 0), point(1, 0), point(0, 1)))
    records = [{'b': F(1, 3), 'a': point(F(1, 2), 1)}, {'poly': tri, 'words': ('01', '10')}]
    first, second = io.StringIO(), io.StringIO()
    fileio.write_json_lines(records, first)
    fileio.write_json_lines(records, second)
    assert first.getvalue() == second.getvalue()
    lines = first.getvalue().splitlines()
    assert lines[0] == '{"a": ["1/2", "1/1"], "b": "1/3"}'
    assert json.loads(lines[1])['words'] == ['01', '10']


def test_read_campaign_config(tmp_path):
    cfg = tmp_path / 'campaign.txt'
    cfg.write_text(
        "# rotational worked example\n"
        "anchors = 1/2,0; 1/2,1\n"
        "\n"
        "symmetry = rotational   # about the centre\n"
        "threshold = 13/100\n"
    )
    assert fileio.read_campaign_config(str(cfg)) == {
        'anchors': '1/2,0; 1/2,1',
        'symmetry': 'rotational',
        'threshold': '13/100',
    }


def test_read_campaign_config_errors(tmp_path):
    with pytest.raises(UsageError):
        fileio.read_campaign_config(str(tmp_path / 'missing.txt'))
    bad = tmp_path / 'bad.txt'
    bad.write_text("symmetry rotational\n")
    with pytest.raises(UsageError, match='bad.txt:1'):
        fileio.read_campaign_config(str(bad))


def test_svg_output(tmp_path):
    svg = fileio.hole_svg(named_hole('delta'), points=[point(F(1, 3), F(1, 3))])
    svg.rect(Box(0, F(1, 2), 0, F(1, 4)))
    svg.text(point(0, 1), '<a&b>')
    text = svg.render()
    assert '>delta</text>' in text
    assert '>&lt;a&amp;b&gt;</text>' in text
    assert '<a&b>' not in text
    assert text.startswith('<?xml')
    assert text.rstrip().endswith('</svg>')
    assert text.count('<polygon') == 1
    assert '<circle' in text
    # y axis flipped: box bottom edge at y = 0 is drawn at 1000
    assert 'y="750.000000" width="500.000000" height="250.000000"' in text

    path = tmp_path / 'family.svg'
    tri = ConvexPoly((point(0, 0), point(1, 0), point(0, 1)))
    fileio.family_svg(Family((tri,)), anchors=[point(F(1, 2), 0)]).save(str(path))
    assert '0.000000,1000.000000' in path.read_text()
