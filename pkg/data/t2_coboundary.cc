{
  "coeff": "Z/4",
  "kind": "cat-coboundary",
  "type": "cochain",
  "values": {
    "e": 1,
    "e.f": 3,
    "f.f": 2
  }
}
