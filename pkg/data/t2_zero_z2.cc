{
  "coeff": "Z/2",
  "kind": "cubical2",
  "type": "cochain",
  "values": {}
}
