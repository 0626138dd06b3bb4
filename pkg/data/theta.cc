{
  "coeff": "Q/Z",
  "kind": "cubical2",
  "type": "cochain",
  "values": {
    "e.f": "1/4"
  }
}
