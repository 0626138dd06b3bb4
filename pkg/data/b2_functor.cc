{
  "coeff": "Z",
  "kind": "functor1",
  "type": "cochain",
  "values": {
    "f1": 1,
    "f2": 0
  }
}
