{
  "coeff": "Z/4",
  "kind": "cubical2",
  "type": "cochain",
  "values": {
    "a0.b0": 1,
    "a0.b1": 2,
    "a1.b1": 3
  }
}
