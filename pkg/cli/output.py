import csv

from rest_framework.renderers import JSONRenderer


def render_json(data):
    return JSONRenderer().render(data).decode('utf-8')


def format_number(value):
    if isinstance(value, float):
        return '%.17g' % value
    return str(value)


def write_csv(stream, header, rows):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_number(value) for value in row])
