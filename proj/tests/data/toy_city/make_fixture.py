"""Regenerates the toy-city fixture from metric coordinates.

Layout (meters from the origin, 100 m cells, boundary 400 x 200):
  cell (0,0): three detached houses on a paved primary road      -> low
  cell (1,0): three houses on an unpaved residential road        -> medium
  cell (2,0): a stack of four structures behind each other        -> high (mean 1.5)
  other five cells: empty                                         -> low
A footway runs between the houses and the road in cell (0,0); a trunk road
lies far outside the boundary; one road and one building are malformed or
outside the boundary.
"""
import json
import math
import pathlib

R = 6378137.0
ORIGIN = (3_640_000.0, -175_000.0)


def inverse(x, y):
    theta = math.asin(y / (math.sqrt(2) * R))
    lat = math.asin((2 * theta + math.sin(2 * theta)) / math.pi)
    lon = math.pi * x / (2 * math.sqrt(2) * R * math.cos(theta))
    return [math.degrees(lon), math.degrees(lat)]


def pt(x, y):
    return inverse(ORIGIN[0] + x, ORIGIN[1] + y)


def square(cx, cy, half=5.0):
    return [[pt(cx - half, cy - half), pt(cx + half, cy - half), pt(cx + half, cy + half),
             pt(cx - half, cy + half), pt(cx - half, cy - half)]]


def feature(geometry, **props):
    return {"type": "Feature", "geometry": geometry, "properties": props}


roads = [
    feature({"type": "LineString", "coordinates": [pt(0, 0), pt(100, 0)]}, **{"class": "primary", "surface": "asphalt"}),
    feature({"type": "LineString", "coordinates": [pt(100, 0), pt(200, 0)]}, **{"class": "residential", "surface": "dirt"}),
    feature({"type": "LineString", "coordinates": [pt(200, 0), pt(400, 0)]}, surface="paved"),
    feature({"type": "LineString", "coordinates": [pt(0, 35), pt(100, 35)]}, **{"class": "footway", "surface": "ground"}),
    feature({"type": "MultiLineString", "coordinates": [[pt(0, 2000), pt(100, 2000)], [pt(200, 2000), pt(300, 2000)]]},
            **{"class": "trunk", "surface": "asphalt"}),
    feature({"type": "LineString", "coordinates": [pt(50, 50)]}, **{"class": "service"}),
]

buildings = [
    feature({"type": "Polygon", "coordinates": square(20, 25)}, confidence=0.9),
    feature({"type": "Polygon", "coordinates": square(50, 25)}, confidence=0.9),
    feature({"type": "Polygon", "coordinates": square(80, 25)}, confidence=0.9),
    feature({"type": "MultiPolygon", "coordinates": [square(120, 25), square(150, 25)]}, confidence=0.85),
    feature({"type": "Polygon", "coordinates": square(180, 25)}, confidence=0.9),
    feature({"type": "Polygon", "coordinates": square(250, 10)}, confidence=0.8),
    feature({"type": "Polygon", "coordinates": square(250, 25)}, confidence=0.8),
    feature({"type": "Polygon", "coordinates": square(250, 40)}, confidence=0.8),
    feature({"type": "Polygon", "coordinates": square(250, 55)}, confidence=0.8),
    feature({"type": "Polygon", "coordinates": square(150, 450)}, confidence=0.6),
]

boundary = feature({"type": "Polygon", "coordinates": [[pt(0, 0), pt(400, 0), pt(400, 200), pt(0, 200), pt(0, 0)]]})

here = pathlib.Path(__file__).parent
for name, feats in [("roads.geojson", roads), ("buildings.geojson", buildings), ("boundary.geojson", [boundary])]:
    (here / name).write_text(json.dumps({"type": "FeatureCollection", "features": feats}, indent=1) + "\n")
